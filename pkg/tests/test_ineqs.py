import pytest

from ccms2.ineqs import (
    FAMILIES, FAMILY_COLUMNS, R_FAMILIES, Inapplicable, LinIneq, all_family_ineqs, base_system,
    dedup, family_ineq, family_rows, format_expr, redundant_applicable, redundant_family,
    subsets, type2_from_T, var_names,
)
from ccms2.model import EnumerationCapError, Point, enumerate_points, new_instance

EX = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3)
SMALL = new_instance(5, {1, 2, 3}, {2, 3, 4}, 1, 4)


def test_u1_example_row():
    row = family_ineq(EX, "U1", (), {1, 4, 6})
    assert row.coeffs == (0, 1, 1, 0, 1, 0, 0, 1, 0, 1) and row.rhs == 3
    assert row.label() == "U1 Q={1,4,6}"
    assert str(row) == "d1 + d2 + z1 + z4 + z6 <= 3"


def test_formatting():
    assert var_names(2) == ["d0", "d1", "d2", "d3", "z1", "z2"]
    assert format_expr((0, 1, -2, 0, 0, -1)) == "d1 - 2 d2 - z2"
    assert format_expr((0,) * 6) == "0"
    assert family_ineq(EX, "L4", (2,), {1, 6}).label() == "L4(2) Q={1,6}"


def test_base_system_names_and_validity():
    rows = base_system(EX)
    fams = [r.family for r in rows]
    assert fams[:5] == ["T1a", "T1b", "T1c", "T1d", "T1e"]
    assert {"SL1", "SL2", "SL3", "SL4", "SL5", "SL6", "SL7"} <= set(fams)
    pts = enumerate_points(EX)
    assert all(r.evaluate(p) <= 0 for r in rows for p in pts)


def test_every_family_row_is_valid():
    pts = enumerate_points(SMALL)
    for row in family_rows(SMALL):
        assert all(row.evaluate(p) <= 0 for p in pts), row.label()


def test_u3_side_condition():
    # Q meeting S1 \ S0 would cut off a feasible point with delta = (1,0,0,0)
    bad = family_ineq(EX, "U3", (1, 2), {1, 2, 4})
    assert isinstance(bad, Inapplicable) and not bad
    assert family_ineq(EX, "L3", (1, 2), {4}).reason.startswith("S1")
    assert family_ineq(EX, "L3", (1, 2), {1, 2})


@pytest.mark.parametrize("family, params", [("U3", (1,)), ("U4", ()), ("U1", (1,)), ("X9", ())])
def test_bad_parameters(family, params):
    with pytest.raises(ValueError):
        family_ineq(EX, family, params, ())


def test_q_outside_ground_set():
    with pytest.raises(ValueError):
        family_ineq(EX, "U1", (), {7})


def test_columns_and_row_count():
    assert len(FAMILY_COLUMNS) == 14
    assert {f for f, _ in FAMILY_COLUMNS} == set(FAMILIES)
    rows = list(all_family_ineqs(EX))
    assert len({r.key for r in rows}) == len(rows)
    assert sum(1 for _ in subsets(6)) == 64


def test_row_cap(monkeypatch):
    monkeypatch.setenv("CCMS2_ENUM_CAP", "5")
    with pytest.raises(EnumerationCapError):
        next(all_family_ineqs(EX))


def test_dedup_keeps_first():
    a = LinIneq((1, 0), 1, "A")
    b = LinIneq((1, 0), 1, "B")
    assert [r.family for r in dedup([a, b])] == ["A"]


def test_linineq_evaluate_point():
    row = family_ineq(EX, "U5", (), {6})
    p = Point.from_coords((1, 1, 1, 1, 0, 0, 0, 0, 0, 1))
    assert row.lhs(p.coords) == 3 and row.evaluate(p) == 0


@pytest.mark.parametrize("family", R_FAMILIES)
def test_redundant_rows_valid(family):
    pts = enumerate_points(SMALL)
    params_list = [(1,), (2,)] if family in ("R3u", "R3l") else [()]
    for params in params_list:
        for Q in subsets(SMALL.n):
            if redundant_applicable(SMALL, family, Q):
                row = redundant_family(SMALL, family, params, Q)
                assert all(row.evaluate(p) <= 0 for p in pts), row.label()


def test_type2_closed_form_matches_enumeration():
    for T in subsets(EX.n):
        for sign in (1, -1):
            a = type2_from_T(EX, T, sign, "closed")
            b = type2_from_T(EX, T, sign, "enumerate")
            assert a.key == b.key


def test_type2_rows_are_valid_and_tight():
    pts = enumerate_points(SMALL)
    for T in subsets(SMALL.n):
        row = type2_from_T(SMALL, T, 1)
        vals = [row.evaluate(p) for p in pts]
        assert max(vals) == 0


def test_type2_closed_needs_proper():
    nested = new_instance(5, {1, 2}, {1, 2, 3}, 1, 3)
    with pytest.raises(ValueError):
        type2_from_T(nested, {1}, 1, "closed")
