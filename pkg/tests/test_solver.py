import random
from fractions import Fraction as F

import pytest

from ccms2.model import InstanceError, XPolyProblem, enumerate_points, new_instance
from ccms2.solver import (
    ROUND_CAP, general_points, new_general_instance, optimize, optimize_general, solve_x_problem,
)

EX = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3)
HARD = new_instance(7, {1, 2, 3}, {3, 4, 5, 6}, 2, 5)
HARD_C = [4, -4, -9, -8, 1, 7, 1, 2, -6, -8, -3]


def ip(inst, c, sense):
    vals = [sum(a * v for a, v in zip(c, p.coords)) for p in enumerate_points(inst)]
    return max(vals) if sense == "max" else min(vals)


@pytest.mark.parametrize("inst", [
    EX, HARD, new_instance(5, {1, 2}, {3, 4, 5}, 2, 4), new_instance(5, {1, 2}, {1, 2, 3}, 1, 3),
    new_instance(6, {1, 2, 3}, {3, 4}, 2, 2),
], ids=str)
def test_random_objectives_exact(inst):
    rng = random.Random(inst.n)
    for _ in range(8):
        c = [rng.randint(-9, 9) for _ in range(inst.dim)]
        for sense in ("max", "min"):
            rep = optimize(inst, c, sense)
            assert rep.status == "optimal" and rep.value == ip(inst, c, sense)
            assert rep.point.is_binary


def test_cuts_needed_and_logged():
    rep = optimize(HARD, HARD_C, "min", trace=True)
    assert rep.value == -17 and rep.rounds >= 1 and rep.total_cuts > 0
    assert [t.round for t in rep.trace] == list(range(len(rep.trace)))
    assert rep.trace[-1].value == -17 and rep.trace[-1].cuts == 0
    assert rep.trace[0].value < -17


def test_round_cap():
    rep = optimize(HARD, HARD_C, "min", max_rounds=0)
    assert rep.status == ROUND_CAP and rep.value is None


def test_deterministic():
    a = optimize(HARD, HARD_C, "min", trace=True)
    b = optimize(HARD, HARD_C, "min", trace=True)
    assert (a.value, a.point, a.rounds, a.cuts, a.pivots, a.trace) == \
        (b.value, b.point, b.rounds, b.cuts, b.pivots, b.trace)


def test_offset_and_rational_objective():
    c = [F(1, 2)] * EX.dim
    rep = optimize(EX, c, "max", offset=F(1, 3))
    assert rep.value == ip(EX, c, "max") + F(1, 3)


def test_bad_sense_and_length():
    with pytest.raises(ValueError):
        optimize(EX, [0] * EX.dim, "up")
    with pytest.raises(ValueError):
        optimize(EX, [0] * 3, "max")


def test_x_space_example():
    p = XPolyProblem(4, {1, 2}, {2, 3}, (1, 1), 0, (0, 0, 0, 0), 1, 3, "max")
    rep = solve_x_problem(p)
    assert rep.value == 2 and rep.x == (1, 1, 1, 0)
    assert solve_x_problem(XPolyProblem(4, {1, 2}, {2, 3}, (1, 1), 0, None, 1, 3, "min")).value == 0
    neg = XPolyProblem(4, {1, 2}, {2, 3}, (1, 1), 0, (0, 0, 0, -1), 1, 3, "max")
    assert solve_x_problem(neg).value == 2


def test_general_two_sets_is_exact():
    g = new_general_instance(6, [{1, 2, 3}, {3, 4, 5}], 1, 3)
    rng = random.Random(1)
    for _ in range(5):
        c = [rng.randint(-6, 6) for _ in range(g.m + g.n)]
        rep = optimize_general(g, c, "max")
        # (delta1, delta2, z) of the general space -> (d0, d1, d2, d3, z)
        full = [0, c[0], c[1], 0] + c[2:]
        assert rep.bound == ip(EX, full, "max")


def test_general_three_sets_bounds():
    g = new_general_instance(6, [{1, 2}, {2, 3, 4}, {4, 5}], 1, 4)
    rng = random.Random(2)
    pts = general_points(g)
    for _ in range(5):
        c = [rng.randint(-6, 6) for _ in range(g.m + g.n)]
        rep = optimize_general(g, c, "max")
        best = max(sum(a * v for a, v in zip(c, p)) for p in pts)
        assert rep.best_value <= best <= rep.bound
        assert rep.exact == (rep.best_value == rep.bound)


def test_general_validation():
    with pytest.raises(InstanceError):
        new_general_instance(4, [{1, 2}], 0, 2)
    with pytest.raises(InstanceError):
        new_general_instance(4, [{1, 2}, {1, 2}], 0, 2)
