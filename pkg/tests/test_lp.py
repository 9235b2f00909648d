import random
from fractions import Fraction as F

import pytest

from ccms2.lp import (
    INFEASIBLE, OPTIMAL, UNBOUNDED, LPModel, Session, check_farkas, check_feasible, read_lp,
    resolve_with_rows, solve, write_lp,
)

BOX = ((0, None), (0, None))


def test_textbook_max():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    m = LPModel(2, (3, 5), "max", (((1, 0), 4, "<="), ((0, 2), 12, "<="), ((3, 2), 18, "<=")), BOX)
    res = solve(m)
    assert res.status == OPTIMAL and res.value == 36 and res.point == (2, 6)
    assert res.dual_value == 36
    assert check_feasible(m, res.point)


def test_fractional_optimum_is_exact():
    m = LPModel(2, (1, 1), "max", (((3, 1), 1, "<="), ((1, 3), 1, "<=")), BOX)
    res = solve(m)
    assert res.value == F(1, 2) and res.point == (F(1, 4), F(1, 4))


def test_min_with_ge_and_eq_rows():
    m = LPModel(3, (2, 3, 1), "min", (((1, 1, 1), 3, "="), ((1, 0, 0), 1, ">=")),
                ((0, None),) * 3)
    res = solve(m)
    assert res.value == 4 and res.point == (1, 0, 2)


def test_free_variables():
    # min x subject to x >= -5 as a row, x free
    m = LPModel(1, (1,), "min", (((1,), -5, ">="),), ((None, None),))
    assert solve(m).value == -5


def test_infeasible_with_certificate():
    m = LPModel(1, (1,), "max", (((1,), 1, "<="), ((1,), 2, ">=")), ((0, None),))
    res = solve(m)
    assert res.status == INFEASIBLE
    assert check_farkas(m, res.farkas)


def test_unbounded():
    m = LPModel(2, (1, 1), "max", (((1, -1), 1, "<="),), BOX)
    res = solve(m)
    assert res.status == UNBOUNDED and res.value is None


def test_bad_models():
    with pytest.raises(ValueError):
        LPModel(2, (1,), "max")
    with pytest.raises(ValueError):
        LPModel(1, (1,), "best")
    with pytest.raises(ValueError):
        LPModel(1, (1,), "max", (((1,), 1, "<"),))
    with pytest.raises(ValueError):
        LPModel(1, (1,), "max", (), ((2, 1),))


def _random_model(rng, n, m):
    rows = tuple((tuple(rng.randint(-3, 6) for _ in range(n)), rng.randint(1, 12), "<=")
                 for _ in range(m))
    return LPModel(n, tuple(rng.randint(-4, 6) for _ in range(n)), "max", rows, ((0, 3),) * n)


def test_against_scipy():
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = random.Random(4)
    for _ in range(40):
        m = _random_model(rng, 4, 5)
        res = solve(m)
        ref = linprog([-float(c) for c in m.objective],
                      A_ub=[[float(a) for a in r[0]] for r in m.rows],
                      b_ub=[float(r[1]) for r in m.rows], bounds=[(0, 3)] * 4, method="highs")
        assert res.status == OPTIMAL and ref.status == 0
        assert abs(float(res.value) + ref.fun) < 1e-7
        assert check_feasible(m, res.point)
        assert res.dual_value == res.value


def test_session_warm_start_matches_cold():
    rng = random.Random(8)
    m = _random_model(rng, 5, 4)
    s = Session(m)
    first = s.solve()
    extra = [(tuple(rng.randint(-2, 4) for _ in range(5)), rng.randint(2, 8), "<=")
             for _ in range(3)]
    s.add_rows(extra)
    warm = s.solve()
    cold = solve(m.with_rows(extra))
    assert warm.value == cold.value == resolve_with_rows(m, first, extra).value
    for sense in ("min", "max"):
        c = tuple(rng.randint(-5, 5) for _ in range(5))
        assert s.solve(c, sense).value == solve(m.with_rows(extra).with_objective(c, sense)).value


def test_lp_text_round_trip():
    m = LPModel(3, (F(1, 2), -1, 0), "min",
                (((1, F(2, 3), 0), 2, "<="), ((0, 1, 1), 1, ">="), ((1, 1, 1), F(5, 2), "=")),
                ((0, 1), (None, None), (-1, 4)), ("a", "b", "c"))
    text = write_lp(m)
    assert text.startswith("\\ ccms2/1 objective-scale 2\nMinimize\n")
    assert " b free" in text and " -1 <= c <= 4" in text
    back = read_lp(text, ("a", "b", "c"))
    assert back.objective == m.objective and back.bounds == m.bounds
    assert solve(back).value == solve(m).value
