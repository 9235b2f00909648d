from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ccms2.ineqs import FAMILY_COLUMNS, family_ineq
from ccms2.model import Point, enumerate_points, new_instance
from ccms2.separation import (
    brute_force_separate, greedy_set, scores, separate_all, separate_family,
)
from ccms2.verify import random_points, separation_check

EX = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3)
INSTANCES = [
    EX,
    new_instance(5, {1, 2}, {3, 4, 5}, 2, 4),    # S0 empty and |S3| > n - l
    new_instance(5, {1, 2}, {1, 2, 3}, 1, 3),    # nested
    new_instance(6, {1, 2, 3}, {3, 4}, 0, 3),
    new_instance(5, {1, 2}, {2, 3}, 2, 5),
]


def example_point():
    q = F(1, 4)
    return Point.of((1, F(3, 4), F(3, 4), 0), (q, q, q, q, q, 0))


def test_example_point_order():
    cuts = separate_all(EX, example_point())
    assert cuts[0].ineq.label() == "U2 Q={3}" and cuts[0].violation == F(7, 4)
    base = [c for c in cuts if c.ineq.family.startswith(("T1", "SL"))]
    assert base[0].ineq.family == "T1e" and base[0].violation == F(1, 2)
    viols = [c.violation for c in cuts]
    assert viols == sorted(viols, reverse=True) and all(v > 0 for v in viols)
    assert len({c.ineq.key for c in cuts}) == len(cuts)


def test_feasible_points_are_not_separated():
    for p in enumerate_points(EX):
        assert separate_all(EX, p) == []


@pytest.mark.parametrize("inst", INSTANCES, ids=str)
def test_greedy_matches_brute_force(inst):
    for pt in random_points(inst, 25, seed=3):
        for family, params in FAMILY_COLUMNS:
            bf = brute_force_separate(inst, family, params, pt)
            Q = greedy_set(scores(inst, family, params, pt))
            if bf is None:
                assert Q is None
                continue
            assert family_ineq(inst, family, params, Q).evaluate(pt) == bf[1]
            cut = separate_family(inst, family, params, pt)
            assert (cut is None) == (bf[1] <= 0)


@pytest.mark.parametrize("inst", INSTANCES, ids=str)
def test_separation_check_200_points(inst):
    assert separation_check(inst, points=200, seed=5).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 13), st.lists(st.integers(0, 8), min_size=10, max_size=10),
       st.sets(st.integers(1, 6)))
def test_score_identity(col, nums, Q):
    family, params = FAMILY_COLUMNS[col]
    pt = Point.from_coords(tuple(F(v, 8) for v in nums))
    row = family_ineq(EX, family, params, Q)
    if not row:
        return
    fs = scores(EX, family, params, pt)
    assert row.evaluate(pt) == fs.const_term + sum(fs.scores[j - 1] for j in Q) - fs.rhs


def test_sign_rule_for_unconstrained_columns():
    # without a cardinality rule the greedy set is exactly the positive scores
    for pt in random_points(EX, 30, seed=9):
        for family, params in FAMILY_COLUMNS:
            fs = scores(EX, family, params, pt)
            if fs.rule.kind != "none":
                continue
            Q = greedy_set(fs)
            free = [j for j in range(1, 7) if j not in fs.rule.forced | fs.rule.forbidden]
            assert {j for j in free if fs.scores[j - 1] > 0} == Q - fs.rule.forced


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_separate(EX, "U1", (), example_point(), cap=4)
