"""Cutting-plane optimization: exact LP plus separation.

For two monomials the separated families describe the convex hull, so the
loop ends at an integral optimum.  For more monomials the same cuts are applied
pairwise and the result is a bound.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ineqs import LinIneq, base_system
from .lp import INFEASIBLE, OPTIMAL, LPModel, Session
from .model import (
    Instance, InstanceError, Point, XPolyProblem, as_rat, from_x_space, is_feasible,
    new_instance, to_x_solution,
)
from .separation import separate_all

DEFAULT_MAX_ROUNDS = 10000
ROUND_CAP = "round_cap"


@dataclass(frozen=True)
class TraceRow:
    round: int
    value: Fraction
    cuts: int
    families: tuple


@dataclass
class SolveReport:
    status: str
    value: Fraction | None = None
    point: Point | None = None
    rounds: int = 0
    cuts: Counter = field(default_factory=Counter)
    pivots: int = 0
    trace: list = field(default_factory=list)
    x: tuple | None = None
    model: LPModel | None = field(default=None, repr=False)

    @property
    def total_cuts(self) -> int:
        return sum(self.cuts.values())


def _objective(c: Sequence, dim: int) -> tuple:
    c = tuple(as_rat(v) for v in c)
    if len(c) != dim:
        raise InstanceError(f"objective needs {dim} coefficients, got {len(c)}")
    return c


def _rows(rows: Sequence[LinIneq]) -> tuple:
    return tuple((r.coeffs, r.rhs, "<=") for r in rows)


class _CutLoop:
    """LP session over an instance plus the cuts found so far."""

    def __init__(self, inst: Instance, rows: Sequence[LinIneq], fixed: dict | None = None):
        self.inst = inst
        self.rows = list(rows)
        self.seen = {r.key for r in self.rows}
        bounds = [(0, 1)] * inst.dim
        for k, v in (fixed or {}).items():
            bounds[k] = (v, v)
        self.fixed = dict(fixed or {})
        self.session = Session(LPModel(inst.dim, (0,) * inst.dim, "max", _rows(self.rows),
                                       tuple(bounds)))

    def run(self, c, sense, max_rounds, report: SolveReport, trace: bool):
        """Returns the terminal LP result; updates counters in ``report``."""
        while True:
            res = self.session.solve(c, sense)
            if res.status != OPTIMAL:
                return res
            cuts = separate_all(self.inst, Point.from_coords(res.point))
            new = [cut.ineq for cut in cuts if cut.ineq.key not in self.seen]
            if trace:
                report.trace.append(TraceRow(report.rounds, res.value, len(new),
                                             tuple(r.label() for r in new)))
            if not new:
                return res
            if report.rounds >= max_rounds:
                return None
            report.rounds += 1
            for r in new:
                self.seen.add(r.key)
                report.cuts[r.family] += 1
            self.rows += new
            self.session.add_rows(_rows(new))


def optimize(inst: Instance, objective: Sequence, sense: str = "max",
             max_rounds: int = DEFAULT_MAX_ROUNDS, trace: bool = False,
             offset=0) -> SolveReport:
    """Exact optimum of ``objective . (delta, z) + offset`` over the set."""
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be min or max, got {sense!r}")
    c = _objective(objective, inst.dim)
    offset = as_rat(offset)
    report = SolveReport(status=OPTIMAL)
    loop = _CutLoop(inst, base_system(inst))
    res = loop.run(c, sense, max_rounds, report, trace)
    report.model = loop.session.model
    if res is None or res.status != OPTIMAL:
        report.pivots = loop.session.pivots
        report.status = ROUND_CAP if res is None else res.status
        return report
    value = res.value
    point = res.point
    pivots = loop.session.pivots
    # sequential fixing; each fixed face of the hull is again integral
    while any(v.denominator != 1 for v in point):
        k = next(k for k, v in enumerate(point) if v.denominator != 1)
        for trial in (0, 1):
            sub = _CutLoop(inst, loop.rows, {**loop.fixed, k: trial})
            r = sub.run(c, sense, max_rounds, report, trace)
            pivots += sub.session.pivots
            if r is not None and r.status == OPTIMAL and r.value == value:
                loop, point = sub, r.point
                break
        else:
            raise ArithmeticError(f"could not fix coordinate {k} without losing the optimum")
    report.pivots = pivots
    report.point = Point.from_coords(point)
    report.value = value + offset
    if not is_feasible(inst, report.point):
        raise ArithmeticError("terminal point is not feasible")
    return report


def solve_x_problem(p: XPolyProblem, max_rounds: int = DEFAULT_MAX_ROUNDS,
                    trace: bool = False) -> SolveReport:
    inst, obj, offset = from_x_space(p)
    rep = optimize(inst, obj, p.sense, max_rounds, trace, offset)
    if rep.status == OPTIMAL:
        rep.x, _ = to_x_solution(inst, rep.point)
    return rep


# --- more than two monomials ---------------------------------------------------------

@dataclass(frozen=True)
class GeneralInstance:
    n: int
    sets: tuple
    l: int
    u: int

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.m), 2))

    @property
    def dim(self) -> int:
        """delta_1..delta_m, z_1..z_n, then (d0, d3) columns for each pair."""
        return self.m + self.n + 2 * len(self.pairs)

    def pair_instance(self, i: int, k: int) -> Instance:
        return new_instance(self.n, self.sets[i], self.sets[k], self.l, self.u)

    def deltas(self, zbits: Sequence[int]) -> tuple:
        return tuple(int(all(zbits[j - 1] == 0 for j in s)) for s in self.sets)


def new_general_instance(n: int, sets: Sequence, l: int, u: int) -> GeneralInstance:
    sets = tuple(frozenset(s) for s in sets)
    if len(sets) < 2:
        raise InstanceError("need at least two monomial sets")
    if len(set(sets)) != len(sets):
        raise InstanceError("monomial sets must be distinct")
    # per-set checks are the two-set checks applied to each pair
    for i, k in itertools.combinations(range(len(sets)), 2):
        new_instance(n, sets[i], sets[k], l, u)
    return GeneralInstance(n, sets, l, u)


def general_points(g: GeneralInstance) -> list[tuple]:
    """Feasible (delta_1..delta_m, z) vectors, z in lexicographic order."""
    out = []
    for zbits in itertools.product((0, 1), repeat=g.n):
        if g.l <= sum(zbits) <= g.u:
            out.append(g.deltas(zbits) + zbits)
    return out


def _pair_columns(g: GeneralInstance, p: int) -> list[int]:
    """Global column of each local (d0, d1, d2, d3, z...) variable of pair ``p``."""
    i, k = g.pairs[p]
    aux = g.m + g.n + 2 * p
    return [aux, i, k, aux + 1] + [g.m + j for j in range(g.n)]


def _lift(g: GeneralInstance, p: int, row: LinIneq) -> LinIneq:
    coeffs = [Fraction(0)] * g.dim
    for col, a in zip(_pair_columns(g, p), row.coeffs):
        coeffs[col] += a
    return LinIneq(tuple(coeffs), row.rhs, row.family, row.params, row.Q)


def _proxy(g: GeneralInstance, p: int, pt: Sequence) -> Point:
    """Local point of an inactive pair: standard-linearization extremes for d0, d3."""
    i, k = g.pairs[p]
    z = tuple(pt[g.m:g.m + g.n])
    S0, S3 = g.sets[i] & g.sets[k], g.sets[i] | g.sets[k]
    d0 = min([Fraction(1)] + [1 - z[j - 1] for j in S0])
    d3 = max(Fraction(0), 1 - sum(z[j - 1] for j in S3))
    return Point((d0, pt[i], pt[k], d3), z)


def standard_rows(g: GeneralInstance) -> list[LinIneq]:
    """Standard linearization of every delta_i plus the cardinality rows."""
    rows = []
    for i, s in enumerate(g.sets):
        for j in sorted(s):
            a = [0] * g.dim
            a[i], a[g.m + j - 1] = 1, 1
            rows.append(LinIneq(tuple(a), 1, "SL2", (i + 1, j)))
        a = [0] * g.dim
        a[i] = -1
        for j in s:
            a[g.m + j - 1] = -1
        rows.append(LinIneq(tuple(a), -1, "SL4", (i + 1,)))
    card = [0] * g.dim
    for j in range(g.n):
        card[g.m + j] = 1
    rows.append(LinIneq(tuple(card), g.u, "SL1"))
    rows.append(LinIneq(tuple(-v for v in card), -g.l, "SL7"))
    return rows


class PairState:
    """Which pairs have their auxiliary columns switched on."""

    def __init__(self, g: GeneralInstance, eager: bool = False):
        self.g = g
        self.active = set(range(len(g.pairs))) if eager else set()

    def activation_rows(self, p: int) -> list[LinIneq]:
        i, k = self.g.pairs[p]
        return [_lift(self.g, p, r) for r in base_system(self.g.pair_instance(i, k))]


def pairwise_cuts(g: GeneralInstance, pt: Sequence, active: set | None = None) -> list[tuple[int, LinIneq, Fraction]]:
    """Violated pair cuts as ``(pair index, row over the extended space, violation)``.

    ``pt`` covers all ``g.dim`` columns; auxiliary values of pairs outside
    ``active`` are replaced by proxies.
    """
    pt = tuple(as_rat(v) for v in pt)
    if len(pt) == g.m + g.n:
        pt = pt + (Fraction(0),) * (2 * len(g.pairs))
    active = set(range(len(g.pairs))) if active is None else active
    out = []
    for p, (i, k) in enumerate(g.pairs):
        if p in active:
            cols = _pair_columns(g, p)
            local = Point.from_coords([pt[c] for c in cols])
        else:
            local = _proxy(g, p, pt)
        for cut in separate_all(g.pair_instance(i, k), local):
            out.append((p, _lift(g, p, cut.ineq), cut.violation))
    return out


@dataclass
class GeneralReport:
    status: str
    bound: Fraction | None = None
    exact: bool = False
    best_value: Fraction | None = None
    best_point: tuple | None = None
    lp_point: tuple | None = None
    rounds: int = 0
    cuts: Counter = field(default_factory=Counter)
    pivots: int = 0
    active_pairs: int = 0


def _round(g: GeneralInstance, z: Sequence[Fraction]) -> tuple:
    """Binary z by threshold 1/2, then clamped to the cardinality window."""
    order = sorted(range(g.n), key=lambda j: (-z[j], j))
    k = sum(1 for v in z if 2 * v >= 1)
    k = min(max(k, g.l), g.u)
    zb = [0] * g.n
    for j in order[:k]:
        zb[j] = 1
    return tuple(zb)


def optimize_general(g: GeneralInstance, objective: Sequence, sense: str = "max",
                     max_rounds: int = DEFAULT_MAX_ROUNDS, eager: bool | None = None) -> GeneralReport:
    """Bound from pairwise cuts; exact when the LP optimum is itself feasible."""
    if g.m > 8 or g.n > 24:
        raise InstanceError("general solver limited to m <= 8 and n <= 24")
    c = _objective(objective, g.m + g.n) + (Fraction(0),) * (2 * len(g.pairs))
    state = PairState(g, eager=(g.m == 2) if eager is None else eager)
    rows = list(standard_rows(g))
    for p in sorted(state.active):
        rows += state.activation_rows(p)
    seen = {r.key for r in rows}
    session = Session(LPModel(g.dim, (0,) * g.dim, "max", _rows(rows), ((0, 1),) * g.dim))
    report = GeneralReport(status=OPTIMAL)
    while True:
        res = session.solve(c, sense)
        if res.status != OPTIMAL:
            report.status = res.status
            report.pivots = session.pivots
            return report
        found = pairwise_cuts(g, res.point, state.active)
        new = []
        for p, row, _ in found:
            if p not in state.active:
                state.active.add(p)
                new += [r for r in state.activation_rows(p) if r.key not in seen]
                seen.update(r.key for r in new)
            if row.key not in seen:
                seen.add(row.key)
                new.append(row)
                report.cuts[row.family] += 1
        if not new:
            break
        if report.rounds >= max_rounds:
            report.status = ROUND_CAP
            break
        report.rounds += 1
        session.add_rows(_rows(new))
    report.pivots = session.pivots
    report.active_pairs = len(state.active)
    report.bound = res.value
    point = res.point[:g.m + g.n]
    report.lp_point = point
    z = point[g.m:]
    if all(v in (0, 1) for v in point) and tuple(int(v) for v in point[:g.m]) == g.deltas(z) \
            and g.l <= sum(z) <= g.u:
        report.exact = report.status == OPTIMAL
        report.best_point = tuple(int(v) for v in point)
    else:
        zb = _round(g, z)
        report.best_point = g.deltas(zb) + zb
    report.best_value = sum(a * v for a, v in zip(c, report.best_point))
    return report
