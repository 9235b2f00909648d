"""Inequalities of the convex hull description.

Every row is stored as ``a . (d0, d1, d2, d3, z_1..z_n) <= rhs`` with integer
data.  Family rows take a set ``Q`` of 1-based indices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .model import Instance, Point, enum_cap, enumerate_points, EnumerationCapError

U_FAMILIES = ("U1", "U2", "U3", "U4", "U5")
L_FAMILIES = ("L1", "L2", "L3", "L4", "L5")
FAMILIES = U_FAMILIES + L_FAMILIES
R_FAMILIES = tuple(f"R{k}{s}" for s in "ul" for k in range(1, 7))

# the 14 parameterized columns of the score table
FAMILY_COLUMNS = (
    ("U1", ()), ("U2", ()), ("U3", (1, 2)), ("U3", (2, 1)), ("U4", (1,)), ("U4", (2,)),
    ("U5", ()),
    ("L1", ()), ("L2", ()), ("L3", (1, 2)), ("L3", (2, 1)), ("L4", (1,)), ("L4", (2,)),
    ("L5", ()),
)

DEFAULT_ROW_CAP = 12


@dataclass(frozen=True)
class LinIneq:
    coeffs: tuple
    rhs: int
    family: str
    params: tuple = ()
    Q: frozenset | None = None

    @property
    def key(self) -> tuple:
        return self.coeffs, self.rhs

    @property
    def n(self) -> int:
        return len(self.coeffs) - 4

    def lhs(self, coords) -> Fraction:
        return sum(a * v for a, v in zip(self.coeffs, coords) if a)

    def evaluate(self, pt: Point | tuple) -> Fraction:
        """``lhs - rhs``; positive means violated."""
        coords = pt.coords if isinstance(pt, Point) else pt
        return self.lhs(coords) - self.rhs

    def with_rhs(self, rhs) -> "LinIneq":
        return LinIneq(self.coeffs, rhs, self.family, self.params, self.Q)

    def label(self) -> str:
        s = self.family
        if self.params:
            s += "(" + ",".join(map(str, self.params)) + ")"
        if self.Q is not None:
            s += " Q=" + fmt_set(self.Q)
        return s

    def __str__(self):
        return f"{format_expr(self.coeffs)} <= {self.rhs}"


def var_names(n: int) -> list[str]:
    return ["d0", "d1", "d2", "d3"] + [f"z{j}" for j in range(1, n + 1)]


def format_expr(coeffs, names=None) -> str:
    """``d1 + 2 d2 - z3`` style rendering of a linear form."""
    names = var_names(len(coeffs) - 4) if names is None else names
    terms = []
    for a, name in zip(coeffs, names):
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        terms.append(f"{sign} {name}" if mag == 1 else f"{sign} {mag} {name}")
    body = " ".join(terms).lstrip("+ ") if terms else "0"
    if body.startswith("- "):
        body = "-" + body[2:]
    return body


@dataclass(frozen=True)
class Inapplicable:
    """Returned by :func:`family_ineq` when a side condition on Q fails."""

    family: str
    reason: str

    def __bool__(self):
        return False


def fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _row(n, delta=(0, 0, 0, 0), zset=(), zcoef=1, zextra=None):
    a = list(delta) + [0] * n
    for j in zset:
        a[3 + j] += zcoef
    if zextra:
        for j, v in zextra.items():
            a[3 + j] += v
    return tuple(a)


def base_system(inst: Instance) -> list[LinIneq]:
    n, S = inst.n, inst.sets()
    J = range(1, n + 1)
    rows = [
        LinIneq(_row(n, (1, 0, 0, 0)), 1, "T1a"),
        LinIneq(_row(n, (0, 0, 0, -1)), 0, "T1b"),
        LinIneq(_row(n, (0, -1, 0, 1)), 0, "T1c"),
        LinIneq(_row(n, (0, 0, -1, 1)), 0, "T1d"),
        LinIneq(_row(n, (-1, 1, 1, -1)), 0, "T1e"),
        LinIneq(_row(n, zset=J), inst.u, "SL1"),
    ]
    for i in (0, 1, 2):
        for j in sorted(S[i]):
            d = [0, 0, 0, 0]
            d[i] = 1
            rows.append(LinIneq(_row(n, d, (j,)), 1, "SL2", (i, j)))
    rows += [LinIneq(_row(n, zset=(j,)), 1, "SL3", (j,)) for j in J]
    # with S0 empty this is the fixing row d0 >= 1
    rows.append(LinIneq(_row(n, (-1, 0, 0, 0), S[0], -1), -1, "SL4"))
    for i in (1, 2):
        d = [1, 0, 0, 0]
        d[i] = -1
        rows.append(LinIneq(_row(n, d, S[i] - S[0], -1), 0, "SL5", (i,)))
    rows += [LinIneq(_row(n, zset=(j,), zcoef=-1), 0, "SL6", (j,)) for j in J]
    rows.append(LinIneq(_row(n, zset=J, zcoef=-1), -inst.l, "SL7"))
    return rows


def _check_params(family: str, params: tuple) -> None:
    if family in ("U3", "L3"):
        if tuple(params) not in ((1, 2), (2, 1)):
            raise ValueError(f"{family} needs (i, k) in {{(1,2),(2,1)}}, got {params}")
    elif family in ("U4", "L4", "R3u", "R3l"):
        if tuple(params) not in ((1,), (2,)):
            raise ValueError(f"{family} needs i in {{1,2}}, got {params}")
    elif params:
        raise ValueError(f"{family} takes no parameters, got {params}")


def family_ineq(inst: Instance, family: str, params: tuple = (), Q: Iterable[int] = ()):
    """One member of the exponential families U1-U5 / L1-L5."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    params = tuple(params)
    _check_params(family, params)
    Q = frozenset(Q)
    n, l, u = inst.n, inst.l, inst.u
    if any(not 1 <= j <= n for j in Q):
        raise ValueError(f"Q must be a subset of 1..{n}")
    S0, S1, S2, S3 = inst.sets()
    S = inst.sets()
    d = [0, 0, 0, 0]

    if family == "U1":
        if len(Q - S0) > u:
            return Inapplicable(family, "|Q \\ S0| > u")
        d = [u - len(Q - S0), len(Q & S1 - S0), len(Q & S2 - S0), 0]
    elif family == "U2":
        d = [0, u - len(Q - S1), u - len(Q - S2), len(Q - S0) - u]
    elif family == "U3":
        i, k = params
        # without this the row fails at delta = (1,0,0,0)
        if Q & (S[i] - S0):
            return Inapplicable(family, f"Q meets S{i} \\ S0")
        d[0], d[i], d[3] = 1, -1, 1
        d[k] = u - 1 - len(Q - S[k])
    elif family == "U4":
        (i,) = params
        if len(Q - S[i]) > u:
            return Inapplicable(family, f"|Q \\ S{i}| > u")
        d[i] = u - len(Q - S[i])
        d[3] = len(Q & S3 - S[i])
    elif family == "U5":
        if len(Q - S3) > u:
            return Inapplicable(family, "|Q \\ S3| > u")
        d[3] = u - len(Q - S3)
    elif family == "L1":
        if len(Q | S0) < n - l:
            return Inapplicable(family, "|Q u S0| < n - l")
        d = [l + len(Q | S0) - n, len(S1 - S0 - Q), len(S2 - S0 - Q), 0]
    elif family == "L2":
        d = [0, l + len(Q | S1) - n, l + len(Q | S2) - n, n - len(Q | S0) - l]
    elif family == "L3":
        i, k = params
        if not S[i] - S0 <= Q:
            return Inapplicable(family, f"S{i} \\ S0 not inside Q")
        d[0], d[i], d[3] = 1, -1, 1
        d[k] = l + len(Q | S[k]) - 1 - n
    elif family == "L4":
        (i,) = params
        if len(Q | S[i]) < n - l:
            return Inapplicable(family, f"|Q u S{i}| < n - l")
        d[i] = l + len(Q | S[i]) - n
        d[3] = len(S3 - S[i] - Q)
    elif family == "L5":
        if len(Q | S3) < n - l:
            return Inapplicable(family, "|Q u S3| < n - l")
        d[3] = l + len(Q | S3) - n

    if family[0] == "U":
        return LinIneq(_row(n, d, Q), u, family, params, Q)
    return LinIneq(_row(n, d, Q, -1), 0, family, params, Q)


def subsets(n: int) -> Iterator[frozenset]:
    for r in range(n + 1):
        for c in itertools.combinations(range(1, n + 1), r):
            yield frozenset(c)


def family_rows(inst: Instance, columns=FAMILY_COLUMNS) -> Iterator[LinIneq]:
    for Q in subsets(inst.n):
        for family, params in columns:
            row = family_ineq(inst, family, params, Q)
            if row:
                yield row


def dedup(rows: Iterable[LinIneq]) -> Iterator[LinIneq]:
    seen = set()
    for r in rows:
        if r.key not in seen:
            seen.add(r.key)
            yield r


def all_family_ineqs(inst: Instance, n_cap: int | None = None,
                     columns=FAMILY_COLUMNS) -> Iterator[LinIneq]:
    """Base system plus every applicable family row over all Q, deduplicated."""
    n_cap = enum_cap(DEFAULT_ROW_CAP) if n_cap is None else n_cap
    if inst.n > n_cap:
        raise EnumerationCapError(f"n = {inst.n} exceeds the row-generation cap {n_cap}")
    yield from dedup(itertools.chain(base_system(inst), family_rows(inst, columns)))


# --- rows used only to check redundancy claims ----------------------------------

def redundant_family(inst: Instance, family: str, params: tuple = (),
                     Q: Iterable[int] = ()) -> LinIneq:
    if family not in R_FAMILIES:
        raise ValueError(f"unknown redundant family {family!r}")
    params = tuple(params)
    _check_params(family, params)
    Q = frozenset(Q)
    n, l, u = inst.n, inst.l, inst.u
    S0, S1, S2, S3 = S = inst.sets()
    two_link = [2, -1, -1, 0]

    def need(cond, what):
        if not cond:
            raise ValueError(f"{family}: side condition {what} fails for Q={fmt_set(Q)}")

    if family == "R1u":
        d = [len(Q & S0), len(Q & (S1 - S0)), len(Q & (S2 - S0)), 0]
        return LinIneq(_row(n, d, Q), len(Q), family, params, Q)
    if family == "R2u":
        return LinIneq(_row(n, zset=Q), u, family, params, Q)
    if family == "R3u":
        (i,) = params
        d = [1, 0, 0, 0]
        d[i] = -1
        return LinIneq(_row(n, d, Q - (S[i] - S0)), u, family, params, Q)
    if family in ("R4u", "R6u"):
        need(len(Q - S3) <= u, "|Q \\ S3| <= u")
    if family == "R4u":
        d = two_link[:3] + [u - len(Q - S3)]
        return LinIneq(_row(n, d, Q - (S3 - S0)), u, family, params, Q)
    if family == "R5u":
        return LinIneq(_row(n, two_link, Q - (S3 - S0)), u, family, params, Q)
    if family == "R6u":
        d = [1, -1, -1, u - len(Q - S3)]
        return LinIneq(_row(n, d, Q - S3), u - 1, family, params, Q)

    if family == "R1l":
        d = [len(S0 - Q), len(S1 - S0 - Q), len(S2 - S0 - Q), 0]
        return LinIneq(_row(n, d, Q, -1), n - len(Q) - l, family, params, Q)
    if family == "R2l":
        return LinIneq(_row(n, zset=Q, zcoef=-1), 0, family, params, Q)
    if family == "R3l":
        (i,) = params
        d = [1, 0, 0, 0]
        d[i] = -1
        return LinIneq(_row(n, d, Q | (S[i] - S0), -1), 0, family, params, Q)
    if family in ("R4l", "R6l"):
        need(len(Q | S3) >= n - l, "|Q u S3| >= n - l")
    if family == "R4l":
        d = two_link[:3] + [l + len(Q | S3) - n]
        return LinIneq(_row(n, d, Q | (S3 - S0), -1), 0, family, params, Q)
    if family == "R5l":
        return LinIneq(_row(n, two_link, Q | (S3 - S0), -1), 0, family, params, Q)
    # R6l
    d = [1, -1, -1, l + len(Q | S3) - n]
    return LinIneq(_row(n, d, Q | S3, -1), -1, family, params, Q)


def redundant_applicable(inst: Instance, family: str, Q: frozenset) -> bool:
    if family in ("R4u", "R6u"):
        return len(Q - inst.S3) <= inst.u
    if family in ("R4l", "R6l"):
        return len(Q | inst.S3) >= inst.n - inst.l
    return True


def redundant_generators(inst: Instance, family: str, params: tuple,
                         Q: Iterable[int]) -> list[LinIneq]:
    """The rows whose combination yields the given redundant row."""
    Q = frozenset(Q)
    base = base_system(inst)

    def pick(*fams):
        return [r for r in base if r.family in fams]

    S0, S3 = inst.S0, inst.S3
    table = {
        "R1u": lambda: pick("SL2", "SL3"),
        "R2u": lambda: pick("SL1", "SL6"),
        "R3u": lambda: pick("SL1", "SL5", "SL6"),
        "R4u": lambda: pick("SL5") + [family_ineq(inst, "U5", (), Q | (S3 - S0))],
        "R5u": lambda: pick("SL1", "SL5", "SL6"),
        "R6u": lambda: pick("SL4", "SL5") + [family_ineq(inst, "U5", (), Q | S3)],
        "R1l": lambda: pick("SL2", "SL3", "SL7"),
        "R2l": lambda: pick("SL6"),
        "R3l": lambda: pick("SL5", "SL6"),
        "R4l": lambda: pick("SL5") + [family_ineq(inst, "L5", (), Q - (S3 - S0))],
        "R5l": lambda: pick("SL5", "SL6"),
        "R6l": lambda: pick("SL4", "SL5") + [family_ineq(inst, "L5", (), Q - S3)],
    }
    return table[family]()


# --- type-2 rows ------------------------------------------------------------------

DELTA_BAR = ((0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 1, 1, 1))


class Type2Underdetermined(ValueError):
    """Some point of the simplex has no feasible completion, so beta is not fixed."""


def _pos(a: int) -> int:
    return a if a > 0 else 0


def _type2_closed(inst: Instance, T: frozenset, sign: int) -> tuple:
    n, l, u = inst.n, inst.l, inst.u
    S0, S1, S2, S3 = inst.sets()
    if sign > 0:
        t0, t1, t2 = int(not T & S0), int(not T & (S1 - S0)), int(not T & (S2 - S0))
        return (min(u - t0, len(T)), min(u - t1 - t2, len(T - S0)),
                min(u - t2, len(T - S1)), min(u - t1, len(T - S2)), min(u, len(T - S3)))
    t0, t1, t2 = int(S0 <= T), int(S1 - S0 <= T), int(S2 - S0 <= T)
    return (-t0 - _pos(l + len(T) - n - t0),
            -t1 - t2 - _pos(l + len(T | S0) - n - t1 - t2),
            -t2 - _pos(l + len(T | S1) - n - t2),
            -t1 - _pos(l + len(T | S2) - n - t1),
            -_pos(l + len(T | S3) - n))


def _type2_enumerated(inst: Instance, T: frozenset, sign: int) -> tuple:
    best = {}
    for p in enumerate_points(inst):
        dbar = tuple(int(v) for v in p.delta)
        val = sign * sum(int(p.z[j - 1]) for j in T)
        if dbar not in best or val > best[dbar]:
            best[dbar] = val
    missing = [d for d in DELTA_BAR if d not in best]
    if missing:
        raise Type2Underdetermined(
            f"no feasible point with delta = {missing}; beta is under-determined")
    return tuple(best[d] for d in DELTA_BAR)


def type2_from_T(inst: Instance, T: Iterable[int], sign: int, method: str = "auto") -> LinIneq:
    """The type-2 row with ``alpha = sign * 1_T``.

    ``method`` is ``closed`` (closed-form right-hand sides, proper non-nested
    instances), ``enumerate`` (maximize over each fiber) or ``auto``.
    """
    T = frozenset(T)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if method == "auto":
        method = "closed" if inst.proper and not inst.nested else "enumerate"
    if method == "closed":
        if not inst.proper or inst.nested:
            raise ValueError("closed form needs S0 nonempty, |S3| <= n - l, not nested")
        m = _type2_closed(inst, T, sign)
    else:
        if inst.n > enum_cap():
            raise EnumerationCapError(f"n = {inst.n} exceeds the enumeration cap")
        m = _type2_enumerated(inst, T, sign)
    # gamma - beta . dbar = m(dbar) on the five simplex vertices
    gamma = m[0]
    b0 = m[0] - m[1]
    b1 = m[1] - m[2]
    b2 = m[1] - m[3]
    b3 = m[2] + m[3] - m[1] - m[4]
    return LinIneq(_row(inst.n, (b0, b1, b2, b3), T, sign), gamma, "TY2", (sign,), T)
