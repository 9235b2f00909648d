import pytest

from ccms2.ineqs import LinIneq, base_system, family_ineq
from ccms2.model import enumerate_points, new_instance
from ccms2.verify import (
    CHECKS, DEFAULT_CHECKS, INSTANCE_KINDS, ablation_check, affine_hull,
    affine_rank, check_validity, closed_form_affine_hull, degenerate_redundancy, facet_check,
    face_check_augmented, hull_equality_check, implication_check, instance_matrix,
    nested_consistency, reduction_check, rref, verify_instance, verify_many,
)

EX = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3)


def test_matrix_shape():
    m = instance_matrix()
    assert len(m) == 40
    assert [k for k, _ in m[:8]] == list(INSTANCE_KINDS)
    kinds = dict(m[:8])
    assert kinds["s0_empty"].s0_empty and kinds["s3_large"].s3_large
    assert kinds["nested"].nested and kinds["l0"].l == 0
    assert kinds["un"].u == kinds["un"].n and kinds["lequ"].l == kinds["lequ"].u


def test_rref_and_rank():
    assert rref([[2, 4], [1, 2]]) == [[1, 2]]
    assert affine_rank([]) == -1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


def test_affine_hull_example():
    hull = affine_hull(EX)
    assert [str(e) for e in hull] == ["d0 + z3 = 1"]
    assert [str(e) for e in closed_form_affine_hull(EX)] == ["d0 + z3 = 1"]
    pts = enumerate_points(EX)
    assert affine_rank([p.coords for p in pts]) == EX.dim - 1


def test_implication_lp():
    rows = base_system(EX)
    # 2 d0 <= 2 is implied by d0 <= 1; d0 <= 0 is not
    assert implication_check(rows, LinIneq((2,) + (0,) * 9, 2, "X"))
    assert not implication_check(rows, LinIneq((1,) + (0,) * 9, 0, "X"))


def test_facet_check():
    info = facet_check(EX, family_ineq(EX, "U1", (), {1, 4, 6}))
    assert info.hull_dim == 9 and info.tight_dim <= 8


def test_validity_detects_bad_row():
    bad = LinIneq((0,) * 10, -1, "X")
    res = check_validity(EX, [bad])
    assert not res.passed and res.witness is not None


def test_hull_and_augment_small():
    inst = new_instance(5, {1, 2}, {3, 4, 5}, 2, 4)
    assert hull_equality_check(inst, trials=10, seed=1).passed
    assert face_check_augmented(inst, trials=3).passed


def test_hull_fails_without_rows():
    res = hull_equality_check(EX, trials=30, seed=0, rows=base_system(EX))
    assert not res.passed and res.witness


def test_ablation_is_informational():
    res = ablation_check(EX, "U2", trials=20, seed=0)
    assert res.info and res.passed


def test_nested_and_reduction():
    assert nested_consistency(new_instance(5, {1, 2}, {1, 2, 3}, 1, 3)).passed
    assert reduction_check(new_instance(6, {1, 2, 3}, {3, 4}, 2, 2), trials=5).passed


def test_degenerate_cases():
    assert degenerate_redundancy(EX).info
    res = degenerate_redundancy(new_instance(5, {1, 2}, {3, 4}, 1, 3))
    assert res.passed and "S0 empty U1" in res.detail


def test_verify_instance_and_many():
    rep = verify_instance(EX, ["validity", "affine"], trials=5)
    assert rep.passed and [c.name for c in rep.checks] == ["validity", "affine"]
    assert all(line.startswith(f"{EX} pass ") for line in rep.lines())
    assert set(DEFAULT_CHECKS) <= set(CHECKS)
    with pytest.raises(ValueError):
        verify_instance(EX, ["nope"])
    reports = verify_many([EX, new_instance(4, {1, 2}, {2, 3}, 1, 3)], ["validity"])
    assert [r.passed for r in reports] == [True, True]
