"""Exact separation of the exponential families by additive scores.

For a fixed point, the left-hand side of every family row is a constant plus
``sum(pi_j for j in Q)``, so the most violated member is found by picking Q
greedily under the family's counting rule.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ineqs import FAMILY_COLUMNS, LinIneq, base_system, family_ineq
from .model import Instance, Point

BRUTE_FORCE_CAP = 16

# delta-part of the score on the zones (S0, S1\S0, S2\S0, J\S3), as
# coefficients on (d0, d1, d2, d3); the z-part is +z for U rows and -z for L rows
_SCORE_TABLE = {
    ("U1", ()): ((0, 0, 0, 0), (-1, 1, 0, 0), (-1, 0, 1, 0), (-1, 0, 0, 0)),
    ("U2", ()): ((0, 0, 0, 0), (0, 0, -1, 1), (0, -1, 0, 1), (0, -1, -1, 1)),
    ("U3", (1, 2)): ((0, 0, 0, 0), (0, 0, -1, 0), (0, 0, 0, 0), (0, 0, -1, 0)),
    ("U3", (2, 1)): ((0, 0, 0, 0), (0, 0, 0, 0), (0, -1, 0, 0), (0, -1, 0, 0)),
    ("U4", (1,)): ((0, 0, 0, 0), (0, 0, 0, 0), (0, -1, 0, 1), (0, -1, 0, 0)),
    ("U4", (2,)): ((0, 0, 0, 0), (0, 0, -1, 1), (0, 0, 0, 0), (0, 0, -1, 0)),
    ("U5", ()): ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, -1)),
    ("L1", ()): ((0, 0, 0, 0), (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, 0)),
    ("L2", ()): ((0, 0, 0, 0), (0, 0, 1, -1), (0, 1, 0, -1), (0, 1, 1, -1)),
    ("L3", (1, 2)): ((0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 0), (0, 0, 1, 0)),
    ("L3", (2, 1)): ((0, 0, 0, 0), (0, 0, 0, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
    ("L4", (1,)): ((0, 0, 0, 0), (0, 0, 0, 0), (0, 1, 0, -1), (0, 1, 0, 0)),
    ("L4", (2,)): ((0, 0, 0, 0), (0, 0, 1, -1), (0, 0, 0, 0), (0, 0, 1, 0)),
    ("L5", ()): ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1)),
}


@dataclass(frozen=True)
class Rule:
    """Admissible Q: ``forced <= Q``, ``Q & forbidden == {}`` and, for
    ``kind`` ``upper``/``lower``, ``|Q & zone|`` at most / at least ``count``."""

    kind: str = "none"
    zone: frozenset = frozenset()
    count: int = 0
    forbidden: frozenset = frozenset()
    forced: frozenset = frozenset()

    def admits(self, Q: frozenset) -> bool:
        if not self.forced <= Q or Q & self.forbidden:
            return False
        if self.kind == "upper":
            return len(Q & self.zone) <= self.count
        if self.kind == "lower":
            return len(Q & self.zone) >= self.count
        return True


@dataclass(frozen=True)
class FamilyScores:
    family: str
    params: tuple
    const_term: Fraction
    scores: tuple
    rule: Rule
    rhs: int


@dataclass(frozen=True)
class SeparationCut:
    ineq: LinIneq
    violation: Fraction


def _zone_of(inst: Instance) -> list[int]:
    S0, S1, S2, _ = inst.sets()
    out = []
    for j in range(1, inst.n + 1):
        out.append(0 if j in S0 else 1 if j in S1 else 2 if j in S2 else 3)
    return out


def _const(inst: Instance, family: str, params: tuple, d: Sequence[Fraction]) -> Fraction:
    n, l, u = inst.n, inst.l, inst.u
    S0, S1, S2, S3 = S = inst.sets()
    if family == "U1":
        return u * d[0]
    if family == "U2":
        return u * (d[1] + d[2] - d[3])
    if family == "U3":
        i, k = params
        return d[0] - d[i] + (u - 1) * d[k] + d[3]
    if family == "U4":
        return u * d[params[0]]
    if family == "U5":
        return u * d[3]
    if family == "L1":
        return (l + len(S0) - n) * d[0] + len(S1 - S0) * d[1] + len(S2 - S0) * d[2]
    if family == "L2":
        return ((l + len(S1) - n) * d[1] + (l + len(S2) - n) * d[2]
                + (n - len(S0) - l) * d[3])
    if family == "L3":
        i, k = params
        return d[0] - d[i] + (l + len(S[k]) - 1 - n) * d[k] + d[3]
    if family == "L4":
        i = params[0]
        return (l + len(S[i]) - n) * d[i] + len(S3 - S[i]) * d[3]
    return (l + len(S3) - n) * d[3]


def _rule(inst: Instance, family: str, params: tuple) -> Rule:
    n, l, u = inst.n, inst.l, inst.u
    J = frozenset(range(1, n + 1))
    S0, S1, S2, S3 = S = inst.sets()
    if family == "U1":
        return Rule("upper", J - S0, u)
    if family == "U4":
        return Rule("upper", J - S[params[0]], u)
    if family == "U5":
        return Rule("upper", J - S3, u)
    if family == "L1":
        return Rule("lower", J - S0, n - l - len(S0))
    if family == "L4":
        return Rule("lower", J - S[params[0]], n - l - len(S[params[0]]))
    if family == "L5":
        return Rule("lower", J - S3, n - l - len(S3))
    if family == "U3":
        return Rule(forbidden=S[params[0]] - S0)
    if family == "L3":
        return Rule(forced=S[params[0]] - S0)
    return Rule()


def scores(inst: Instance, family: str, params: tuple, pt: Point) -> FamilyScores:
    params = tuple(params)
    table = _SCORE_TABLE[(family, params)]
    d, z = pt.delta, pt.z
    zsign = 1 if family[0] == "U" else -1
    zone = _zone_of(inst)
    pi = tuple(zsign * z[j] + sum(c * v for c, v in zip(table[zone[j]], d) if c)
               for j in range(inst.n))
    rhs = inst.u if family[0] == "U" else 0
    return FamilyScores(family, params, _const(inst, family, params, d), pi,
                        _rule(inst, family, params), rhs)


def greedy_set(fs: FamilyScores) -> frozenset | None:
    """A maximizer of ``sum(pi_j for j in Q)`` over the admissible Q."""
    rule, pi = fs.rule, fs.scores
    n = len(pi)
    Q = set(rule.forced)
    counted = []
    for j in range(1, n + 1):
        if j in rule.forced or j in rule.forbidden:
            continue
        if rule.kind != "none" and j in rule.zone:
            counted.append(j)
        elif pi[j - 1] > 0:
            Q.add(j)
    counted.sort(key=lambda j: (-pi[j - 1], j))
    if rule.kind == "upper":
        for j in counted[:max(rule.count, 0)]:
            if pi[j - 1] <= 0:
                break
            Q.add(j)
    elif rule.kind == "lower":
        need = max(rule.count, 0)
        if need > len(counted):
            return None
        for pos, j in enumerate(counted):
            if pi[j - 1] > 0 or pos < need:
                Q.add(j)
    return frozenset(Q)


def separate_family(inst: Instance, family: str, params: tuple, pt: Point) -> SeparationCut | None:
    fs = scores(inst, family, params, pt)
    Q = greedy_set(fs)
    if Q is None:
        return None
    row = family_ineq(inst, family, tuple(params), Q)
    viol = row.evaluate(pt)
    return SeparationCut(row, viol) if viol > 0 else None


def separate_all(inst: Instance, pt: Point) -> list[SeparationCut]:
    """Violated base rows plus the most violated member of each family column."""
    cuts = []
    for row in base_system(inst):
        v = row.evaluate(pt)
        if v > 0:
            cuts.append(SeparationCut(row, v))
    for family, params in FAMILY_COLUMNS:
        cut = separate_family(inst, family, params, pt)
        if cut is not None:
            cuts.append(cut)
    order = {f: k for k, f in enumerate(
        ["T1a", "T1b", "T1c", "T1d", "T1e"] + [f"SL{k}" for k in range(1, 8)]
        + [f for f, _ in FAMILY_COLUMNS])}
    cuts.sort(key=lambda c: (-c.violation, order[c.ineq.family], c.ineq.params))
    out, seen = [], set()
    for c in cuts:
        if c.ineq.key not in seen:
            seen.add(c.ineq.key)
            out.append(c)
    return out


def brute_force_separate(inst: Instance, family: str, params: tuple, pt: Point,
                         cap: int = BRUTE_FORCE_CAP) -> tuple[frozenset, Fraction] | None:
    """Most violated member by trying every Q (ties: lexicographically smallest Q).

    Returns ``(Q, lhs - rhs)`` even when the best value is not positive, or
    None when no Q is admissible.
    """
    if inst.n > cap:
        raise ValueError(f"n = {inst.n} exceeds the brute-force cap {cap}")
    best = None
    for r in range(inst.n + 1):
        for combo in itertools.combinations(range(1, inst.n + 1), r):
            row = family_ineq(inst, family, tuple(params), combo)
            if not row:
                continue
            v = row.evaluate(pt)
            if best is None or v > best[1] or (v == best[1] and combo < best[2]):
                best = (frozenset(combo), v, combo)
    return None if best is None else best[:2]
