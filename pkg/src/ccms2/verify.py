"""Exhaustive checks of the hull description at small n.

Every check returns a :class:`CheckResult`.  A failing result always carries a
witness (a point, an objective or a row) that can be re-checked by hand.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .ineqs import (
    FAMILY_COLUMNS, L_FAMILIES, R_FAMILIES, U_FAMILIES, LinIneq, Type2Underdetermined,
    all_family_ineqs, base_system, dedup, family_ineq, family_rows, format_expr,
    redundant_applicable, redundant_family, redundant_generators, subsets, type2_from_T,
)
from .lp import LPModel, Session
from .model import (
    Instance, Point, augment, enumerate_points, new_instance, pad_point, reduce_l_eq_u,
)
from .separation import greedy_set, scores

INSTANCE_KINDS = ("proper", "s0_empty", "s3_large", "both", "nested", "l0", "un", "lequ")

# one instance per (kind, n); "both" has S0 empty and |S3| > n - l
_MATRIX = {
    4: ((4, {1, 2}, {2, 3}, 1, 3), (4, {1, 2}, {3, 4}, 0, 2), (4, {1, 2}, {2, 3}, 2, 3),
        (4, {1, 2}, {3, 4}, 1, 3), (4, {1}, {1, 2}, 1, 3), (4, {1, 2}, {2, 3}, 0, 2),
        (4, {1, 2}, {2, 3}, 1, 4), (4, {1}, {2}, 2, 2)),
    5: ((5, {1, 2, 3}, {2, 3, 4}, 1, 4), (5, {1, 2}, {3, 4}, 1, 3), (5, {1, 2, 3}, {3, 4, 5}, 1, 3),
        (5, {1, 2}, {3, 4, 5}, 2, 4), (5, {1, 2}, {1, 2, 3}, 1, 3), (5, {1, 2}, {2, 3, 4}, 0, 3),
        (5, {1, 2}, {2, 3}, 2, 5), (5, {1, 2}, {2, 3}, 2, 2)),
    6: ((6, {1, 2, 3}, {3, 4, 5}, 1, 3), (6, {1, 2}, {3, 4}, 1, 4), (6, {1, 2, 3}, {3, 4, 5}, 2, 4),
        (6, {1, 2, 3}, {4, 5, 6}, 1, 3), (6, {1, 2}, {1, 2, 3, 4}, 1, 4),
        (6, {1, 2, 3}, {3, 4}, 0, 3), (6, {1, 2}, {2, 3, 4}, 1, 6), (6, {1, 2, 3}, {3, 4}, 2, 2)),
    7: ((7, {1, 2, 3}, {2, 3, 4, 5}, 1, 3), (7, {1, 2, 3}, {4, 5}, 1, 4),
        (7, {1, 2, 3}, {3, 4, 5, 6}, 2, 5), (7, {1, 2, 3}, {4, 5, 6}, 2, 4),
        (7, {1, 2}, {1, 2, 3, 4}, 2, 5), (7, {1, 2, 3}, {3, 4, 5}, 0, 4),
        (7, {1, 2, 3}, {2, 3, 4}, 1, 7), (7, {1, 2}, {2, 3, 4}, 3, 3)),
    8: ((8, {1, 2, 3, 4}, {3, 4, 5, 6}, 1, 5), (8, {1, 2, 3}, {4, 5, 6}, 1, 4),
        (8, {1, 2, 3, 4}, {4, 5, 6, 7}, 2, 5), (8, {1, 2, 3}, {4, 5, 6, 7}, 2, 5),
        (8, {1, 2, 3}, {1, 2, 3, 4, 5}, 1, 4), (8, {1, 2, 3}, {2, 3, 4, 5}, 0, 4),
        (8, {1, 2, 3}, {3, 4, 5}, 2, 8), (8, {1, 2, 3}, {3, 4, 5}, 3, 3)),
}


def instance_matrix(ns: Iterable[int] = range(4, 9), kinds: Iterable[str] = INSTANCE_KINDS):
    """``(kind, instance)`` pairs of the test matrix."""
    kinds = tuple(kinds)
    out = []
    for n in ns:
        for kind, args in zip(INSTANCE_KINDS, _MATRIX[n]):
            if kind in kinds:
                out.append((kind, new_instance(*args)))
    return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None
    # informational results never count as failures
    info: bool = False

    def line(self) -> str:
        status = "info" if self.info else ("pass" if self.passed else "FAIL")
        text = f"{status} {self.name}"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class VerifyReport:
    instance: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed or c.info for c in self.checks)

    def lines(self) -> list[str]:
        return [f"{self.instance} {c.line()}" for c in self.checks]


def _obj_value(c: Sequence, pt: Point) -> Fraction:
    return sum(a * v for a, v in zip(c, pt.coords))


def _box(nvars: int):
    return ((0, 1),) * nvars


def _lp(rows: Sequence[LinIneq], nvars: int, bounds=None) -> LPModel:
    return LPModel(nvars, (0,) * nvars, "max",
                   tuple((r.coeffs, r.rhs, "<=") for r in rows),
                   _box(nvars) if bounds is None else bounds)


# --- validity -------------------------------------------------------------------

def check_validity(inst: Instance, rows: Iterable[LinIneq] | None = None,
                   points: Sequence[Point] | None = None) -> CheckResult:
    rows = list(all_family_ineqs(inst) if rows is None else rows)
    points = enumerate_points(inst) if points is None else points
    for row in rows:
        for p in points:
            if row.evaluate(p) > 0:
                return CheckResult("validity", False,
                                   f"{row.label()} violated by {row.evaluate(p)}", (row, p))
    return CheckResult("validity", True, f"{len(rows)} rows x {len(points)} points")


# --- hull equality ----------------------------------------------------------------

def _objectives(nvars: int, trials: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(rng.randint(-9, 9) for _ in range(nvars)) for _ in range(trials)]


def hull_equality_check(inst: Instance, trials: int = 100, seed: int = 0,
                        rows: Iterable[LinIneq] | None = None,
                        name: str = "hull") -> CheckResult:
    """LP optimum over ``rows`` versus the enumerated optimum, both senses."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rows = list(all_family_ineqs(inst) if rows is None else rows)
    points = enumerate_points(inst)
    session = Session(_lp(rows, inst.dim))
    for c in _objectives(inst.dim, trials, seed):
        vals = [_obj_value(c, p) for p in points]
        for sense, ip in (("max", max(vals)), ("min", min(vals))):
            res = session.solve(c, sense)
            if not res.optimal or res.value != ip:
                return CheckResult(name, False,
                                   f"{sense} c={list(c)}: LP {res.value} ({res.status}) vs IP {ip}",
                                   (sense, c, res.value, ip))
    return CheckResult(name, True, f"{trials} objectives x 2 senses, seed {seed}, "
                                   f"{len(rows)} rows, {session.pivots} pivots")


def ablation_check(inst: Instance, family: str = "U2", trials: int = 100,
                   seed: int = 0) -> CheckResult:
    """Drop one family and look for an objective where the LP bound moves.

    Finding no witness is reported as information, not as a failure.
    """
    rows = list(dedup(list(base_system(inst)) + [
        r for r in family_rows(inst, [c for c in FAMILY_COLUMNS if c[0] != family])]))
    res = hull_equality_check(inst, trials, seed, rows, name=f"ablation-{family}")
    if res.passed:
        return CheckResult(res.name, True, "not witnessed", info=True)
    return CheckResult(res.name, True, f"witnessed: {res.detail}", res.witness, info=True)


# --- implication --------------------------------------------------------------------

class UnboundedImplication(ValueError):
    """The generator system does not bound the target's left-hand side."""


class Implication:
    """Reusable LP over a generator system; variables are free unless a row bounds them."""

    def __init__(self, generators: Sequence[LinIneq], nvars: int | None = None):
        generators = list(generators)
        if nvars is None:
            nvars = len(generators[0].coeffs)
        self.session = Session(_lp(generators, nvars, ((None, None),) * nvars))

    def implies(self, target: LinIneq) -> bool:
        res = self.session.solve(target.coeffs, "max")
        if res.status == "unbounded":
            raise UnboundedImplication(f"{target.label()} is unbounded over the generators")
        if res.status == "infeasible":
            return True
        return res.value <= target.rhs


def implication_check(generators: Sequence[LinIneq], target: LinIneq) -> bool:
    return Implication(generators, len(target.coeffs)).implies(target)


def redundancy_certificates(inst: Instance) -> CheckResult:
    """Each redundant family member follows from its generator rows."""
    count = 0
    for family in R_FAMILIES:
        plist = [(1,), (2,)] if family in ("R3u", "R3l") else [()]
        for params in plist:
            for Q in subsets(inst.n):
                if not redundant_applicable(inst, family, Q):
                    continue
                target = redundant_family(inst, family, params, Q)
                gens = redundant_generators(inst, family, params, Q)
                try:
                    ok = implication_check(gens, target)
                except UnboundedImplication as exc:
                    return CheckResult("redundancy", False, str(exc), target)
                if not ok:
                    return CheckResult("redundancy", False,
                                       f"{target.label()} not implied by its generators", target)
                count += 1
    return CheckResult("redundancy", True, f"{count} rows over {len(R_FAMILIES)} families")


def type2_subsumption(inst: Instance) -> CheckResult:
    """Every type-2 row is implied by the shipped system."""
    checker = Implication(list(all_family_ineqs(inst)))
    count = skipped = 0
    for T in subsets(inst.n):
        for sign in (1, -1):
            try:
                row = type2_from_T(inst, T, sign)
            except Type2Underdetermined:
                skipped += 1
                continue
            if not checker.implies(row):
                return CheckResult("type2", False, f"{row} not implied", row)
            count += 1
    extra = f", {skipped} under-determined" if skipped else ""
    return CheckResult("type2", True, f"{count} rows implied{extra}")


def degenerate_targets(inst: Instance) -> list[tuple[str, list[str], list[LinIneq]]]:
    """(reason, target families, generators) for each degenerate case of ``inst``."""
    base = base_system(inst)
    out = []
    if inst.s0_empty:
        out.append(("S0 empty", ["U1", "L1"], base))
    if inst.s3_large:
        # L5 with Q empty pins d3 = 0; the other families stay available
        keep = [c for c in FAMILY_COLUMNS if c[0] in ("U1", "U2", "U3", "L1", "L2", "L3")]
        gens = list(dedup(base + [r for r in family_rows(inst, [("L5", ())]) if not r.Q]
                          + list(family_rows(inst, keep))))
        out.append(("|S3| > n - l", ["U4", "U5", "L4", "L5"], gens))
    if inst.u == inst.n:
        out.append(("u = n", list(U_FAMILIES), base))
    if inst.l == 0:
        out.append(("l = 0", list(L_FAMILIES), base))
    return out


def degenerate_redundancy(inst: Instance) -> CheckResult:
    """Rows claimed redundant in degenerate cases, checked family by family."""
    cases = degenerate_targets(inst)
    if not cases:
        return CheckResult("degenerate", True, "no degenerate case applies", info=True)
    parts, failures = [], []
    for reason, fams, gens in cases:
        checker = Implication(gens)
        for fam in fams:
            rows = list(family_rows(inst, [c for c in FAMILY_COLUMNS if c[0] == fam]))
            bad = [r for r in rows if not checker.implies(r)]
            parts.append(f"{reason} {fam} {len(rows) - len(bad)}/{len(rows)}")
            failures += bad
    detail = ", ".join(parts)
    if failures:
        return CheckResult("degenerate", False,
                           f"{detail}; first not implied: {failures[0]}", failures)
    return CheckResult("degenerate", True, detail)


# --- affine hull and facets -------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over the rationals, zero rows dropped."""
    m = [[Fraction(v) for v in r] for r in rows]
    out, col = [], 0
    ncols = len(m[0]) if m else 0
    while m and col < ncols:
        piv = next((r for r in m if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        m.remove(piv)
        piv = [v / piv[col] for v in piv]
        m = [[a - r[col] * b for a, b in zip(r, piv)] if r[col] else r for r in m]
        out = [[a - r[col] * b for a, b in zip(r, piv)] if r[col] else r for r in out]
        out.append(piv)
        col += 1
    return out


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    p0 = points[0]
    return len(rref([[a - b for a, b in zip(p, p0)] for p in points[1:]]))


@dataclass(frozen=True)
class Equality:
    coeffs: tuple
    rhs: Fraction

    def __str__(self):
        return f"{format_expr(self.coeffs)} = {self.rhs}"


def enumerated_affine_hull(points: Sequence[Point]) -> list[Equality]:
    """Basis (in reduced form) of the equalities satisfied by every point."""
    if not points:
        raise ValueError("no points")
    dim = len(points[0].coords)
    # (a, -b) with a.x - b = 0 for all points: the null space of [x | 1]
    mat = rref([list(p.coords) + [1] for p in points])
    pivots = [next(k for k, v in enumerate(r) if v) for r in mat]
    free = [k for k in range(dim + 1) if k not in pivots]
    eqs = []
    for f in free:
        vec = [Fraction(0)] * (dim + 1)
        vec[f] = Fraction(1)
        for r, p in zip(mat, pivots):
            vec[p] = -r[f]
        eqs.append(vec)
    basis = rref(eqs)
    return [Equality(tuple(r[:dim]), -r[dim]) for r in basis]


def closed_form_applies(inst: Instance) -> bool:
    return inst.proper and not inst.nested


def closed_form_affine_hull(inst: Instance) -> list[Equality]:
    """Equalities of the hull of a proper, non-nested instance.

    ``d0 + z_j0 = 1`` when S0 = {j0}; with ``l = u`` the cardinality row is an
    equality as well.
    """
    if not closed_form_applies(inst):
        raise ValueError("closed form needs S0 nonempty, |S3| <= n - l and S1, S2 not nested")
    eqs = []
    if len(inst.S0) == 1:
        (j0,) = inst.S0
        coeffs = [0] * inst.dim
        coeffs[0] = coeffs[3 + j0] = 1
        eqs.append(Equality(tuple(Fraction(v) for v in coeffs), Fraction(1)))
    if inst.l == inst.u:
        coeffs = (0,) * 4 + (1,) * inst.n
        eqs.append(Equality(tuple(Fraction(v) for v in coeffs), Fraction(inst.u)))
    return eqs


def affine_hull(inst: Instance) -> list[Equality]:
    """Closed form when it applies, else from the enumerated points."""
    if closed_form_applies(inst):
        return closed_form_affine_hull(inst)
    return enumerated_affine_hull(enumerate_points(inst))


def _same_span(a: Sequence[Equality], b: Sequence[Equality]) -> bool:
    ra = rref([list(e.coeffs) + [e.rhs] for e in a]) if a else []
    rb = rref([list(e.coeffs) + [e.rhs] for e in b]) if b else []
    return ra == rb


def affine_hull_check(inst: Instance) -> CheckResult:
    points = enumerate_points(inst)
    enumerated = enumerated_affine_hull(points)
    rank = affine_rank([p.coords for p in points])
    if rank + len(enumerated) != inst.dim:
        return CheckResult("affine", False, f"rank {rank} vs {len(enumerated)} equalities",
                           enumerated)
    if not closed_form_applies(inst):
        return CheckResult("affine", True, f"dim {rank}; "
                           + ("; ".join(map(str, enumerated)) or "full-dimensional"))
    closed = closed_form_affine_hull(inst)
    if not _same_span(closed, enumerated):
        return CheckResult("affine", False,
                           f"closed form {list(map(str, closed))} vs {list(map(str, enumerated))}",
                           (closed, enumerated))
    return CheckResult("affine", True, f"dim {rank}; "
                       + ("; ".join(map(str, closed)) or "full-dimensional"))


@dataclass(frozen=True)
class FacetInfo:
    tight_dim: int
    hull_dim: int

    @property
    def is_facet(self) -> bool:
        return self.tight_dim == self.hull_dim - 1


def facet_check(inst: Instance, row: LinIneq, points: Sequence[Point] | None = None) -> FacetInfo:
    points = enumerate_points(inst) if points is None else points
    tight = [p.coords for p in points if row.evaluate(p) == 0]
    return FacetInfo(affine_rank(tight), affine_rank([p.coords for p in points]))


# --- reformulations ------------------------------------------------------------------------

def face_check_augmented(inst: Instance, trials: int = 20, seed: int = 0) -> CheckResult:
    """The instance is the face ``new z = 0`` of its augmentation."""
    aug = augment(inst)
    big = aug.instance
    if big == inst:
        return CheckResult("augment", True, "proper: identity augmentation")
    new = set(aug.new_indices)
    lifted = {pad_point(p, big.n) for p in enumerate_points(inst)}
    face = {p for p in enumerate_points(big) if all(p.z[j - 1] == 0 for j in new)}
    if lifted != face:
        diff = sorted(lifted ^ face, key=lambda p: p.coords)[0]
        return CheckResult("augment", False, "point sets differ", diff)
    bounds = tuple((0, 0) if k >= 4 and (k - 3) in new else (0, 1) for k in range(big.dim))
    session = Session(_lp(list(all_family_ineqs(big)), big.dim, bounds))
    points = enumerate_points(inst)
    for c in _objectives(inst.dim, trials, seed):
        cbig = tuple(c) + (0,) * (big.n - inst.n)
        vals = [_obj_value(c, p) for p in points]
        for sense, ip in (("max", max(vals)), ("min", min(vals))):
            res = session.solve(cbig, sense)
            if res.value != ip:
                return CheckResult("augment", False, f"{sense} c={list(c)}: LP {res.value} vs IP {ip}",
                                   (sense, c))
    return CheckResult("augment", True, f"n+ = {big.n}, {len(face)} face points, "
                                        f"{trials} objectives x 2 senses")


def nested_generators(inst: Instance) -> list[LinIneq]:
    return [r for r in base_system(inst) if r.family in ("T1c", "T1d", "T1e", "SL5")]


def nested_consistency(inst: Instance) -> CheckResult:
    """With S1 and S2 nested, d0 equals the smaller monomial and d3 the larger."""
    if not inst.nested:
        raise ValueError("instance is not nested")
    small, large = (1, 2) if inst.S1 < inst.S2 else (2, 1)
    eqs = []
    for a, b in ((0, small), (3, large)):
        coeffs = [0] * inst.dim
        coeffs[a], coeffs[b] = 1, -1
        eqs.append(tuple(coeffs))
    for p in enumerate_points(inst):
        for e in eqs:
            if sum(x * y for x, y in zip(e, p.coords)) != 0:
                return CheckResult("nested", False, "equality fails on a point", p)
    checker = Implication(nested_generators(inst))
    for e in eqs:
        for sign in (1, -1):
            row = LinIneq(tuple(sign * v for v in e), 0, "EQ")
            if not checker.implies(row):
                return CheckResult("nested", False, f"{row} not implied", row)
    return CheckResult("nested", True, f"d0 = d{small}, d3 = d{large} implied by "
                                       "T1c, T1d, T1e, SL5")


def reduction_check(inst: Instance, trials: int = 20, seed: int = 0) -> CheckResult:
    """For ``l = u``: optimize over the reduced hull, lift back, compare with enumeration."""
    if inst.l != inst.u:
        raise ValueError("reduction needs l = u")
    drop = min(set(range(1, inst.n + 1)) - inst.S3)
    red = reduce_l_eq_u(inst, drop)
    small = red.instance
    points = enumerate_points(inst)
    back = {red.lift(p) for p in enumerate_points(small)}
    if back != set(points):
        return CheckResult("reduction", False, "lifted points differ", drop)
    session = Session(_lp(list(all_family_ineqs(small)), small.dim))
    for c in _objectives(inst.dim, trials, seed):
        # c_drop * z_drop = c_drop * (u - sum of the kept z)
        cd = c[3 + drop]
        cred = tuple(c[:4]) + tuple(c[3 + j] - cd for j in red.keep)
        vals = [_obj_value(c, p) for p in points]
        for sense, ip in (("max", max(vals)), ("min", min(vals))):
            res = session.solve(cred, sense)
            lifted = red.lift(Point.from_coords(res.point))
            if res.value + cd * inst.u != ip or _obj_value(c, lifted) != ip:
                return CheckResult("reduction", False, f"{sense} c={list(c)}", (sense, c))
    return CheckResult("reduction", True, f"dropped z{drop}; {trials} objectives x 2 senses")


# --- separation -----------------------------------------------------------------------

def random_points(inst: Instance, count: int, seed: int = 0, denom: int = 12) -> list[Point]:
    """Rational points of the unit box with denominator ``denom``."""
    rng = random.Random(seed)
    return [Point.from_coords(tuple(Fraction(rng.randint(0, denom), denom)
                                    for _ in range(inst.dim))) for _ in range(count)]


def separation_check(inst: Instance, points: int = 200, seed: int = 0,
                     denom: int = 12) -> CheckResult:
    """Greedy violation against the maximum over every row of the column.

    The brute-force side scales all points by ``denom`` and evaluates every
    row at once as an integer matrix product.
    """
    pts = random_points(inst, points, seed, denom)
    X = np.array([[int(v * denom) for v in p.coords] for p in pts], dtype=np.int64).T
    rng = random.Random(seed + 1)
    for family, params in FAMILY_COLUMNS:
        rows = list(family_rows(inst, [(family, params)]))
        if rows:
            A = np.array([[int(a) for a in r.coeffs] for r in rows], dtype=np.int64)
            b = np.array([int(r.rhs) for r in rows], dtype=np.int64)
            best = (A @ X - denom * b[:, None]).max(axis=0)
        for k, pt in enumerate(pts):
            fs = scores(inst, family, params, pt)
            Q = greedy_set(fs)
            if Q is None or not rows:
                if Q is not None or rows:
                    return CheckResult("separation", False,
                                       f"{family}{params}: greedy and enumeration disagree on "
                                       "whether any row applies", pt)
                continue
            got = family_ineq(inst, family, params, Q).evaluate(pt)
            if got * denom != int(best[k]):
                return CheckResult("separation", False,
                                   f"{family}{params}: greedy {got} vs best "
                                   f"{Fraction(int(best[k]), denom)}", pt)
            # score identity on a random admissible member of the column
            row = rows[rng.randrange(len(rows))]
            if row.evaluate(pt) != fs.const_term + sum(fs.scores[j - 1] for j in row.Q) - fs.rhs:
                return CheckResult("separation", False,
                                   f"score identity fails for {row.label()}", pt)
    return CheckResult("separation", True, f"{len(FAMILY_COLUMNS)} columns x {points} points")


# --- driver ---------------------------------------------------------------------------

CHECKS: dict[str, Callable] = {
    "validity": lambda inst, trials, seed: check_validity(inst),
    "hull": lambda inst, trials, seed: hull_equality_check(inst, trials, seed),
    "affine": lambda inst, trials, seed: affine_hull_check(inst),
    "augment": lambda inst, trials, seed: face_check_augmented(inst, min(trials, 20), seed),
    "nested": lambda inst, trials, seed: (nested_consistency(inst) if inst.nested else None),
    "reduction": lambda inst, trials, seed: (reduction_check(inst, min(trials, 20), seed)
                                             if inst.l == inst.u and inst.u >= 2 else None),
    "degenerate": lambda inst, trials, seed: degenerate_redundancy(inst),
    "redundancy": lambda inst, trials, seed: redundancy_certificates(inst),
    "type2": lambda inst, trials, seed: (type2_subsumption(inst) if closed_form_applies(inst)
                                         else None),
    "separation": lambda inst, trials, seed: separation_check(inst, max(trials, 200), seed),
    "ablation": lambda inst, trials, seed: ablation_check(inst, "U2", trials, seed),
}

DEFAULT_CHECKS = ("validity", "hull", "affine", "augment", "nested", "reduction", "degenerate")


def verify_instance(inst: Instance, checks: Sequence[str] = DEFAULT_CHECKS,
                    trials: int = 100, seed: int = 0) -> VerifyReport:
    report = VerifyReport(str(inst))
    for name in checks:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        res = CHECKS[name](inst, trials, seed)
        if res is not None:
            report.checks.append(res)
    return report


def _verify_args(args):
    return verify_instance(*args)


def verify_many(instances: Sequence[Instance], checks: Sequence[str] = DEFAULT_CHECKS,
                trials: int = 100, seed: int = 0, jobs: int = 1) -> list[VerifyReport]:
    """Run the checks on each instance; reports come back in input order."""
    work = [(inst, tuple(checks), trials, seed) for inst in instances]
    if jobs <= 1:
        return [_verify_args(w) for w in work]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(_verify_args, work))
