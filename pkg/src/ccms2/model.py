"""Problem data, space transforms and enumeration for the two-monomial
cardinality constrained multilinear set.

Index sets (``S1``, ``S2``, ``T1`` ...) are 1-based, as in every file format
and error message of the package.  Vectors are plain tuples, so ``z[j - 1]``
holds ``z_j``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_ENUM_CAP = 20


class InstanceError(ValueError):
    """Invalid problem data."""


class BoundError(InstanceError):
    pass


class DegenerateSetError(InstanceError):
    pass


class ForcedZeroError(InstanceError):
    """A monomial whose set is larger than ``n - l`` is identically zero."""

    def __init__(self, which: int, size: int, n: int, l: int):
        self.which = which
        super().__init__(
            f"|S{which}| = {size} > n - l = {n - l}: delta_{which} is fixed to 0 "
            f"on every feasible point; fix it explicitly (see forced_zero_monomials)"
        )


class EnumerationCapError(InstanceError):
    pass


def enum_cap(default: int = DEFAULT_ENUM_CAP) -> int:
    """Enumeration cap, overridable through ``CCMS2_ENUM_CAP``."""
    value = os.environ.get("CCMS2_ENUM_CAP")
    return int(value) if value else default


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing to ingest float {value!r}; pass an exact rational")
    return Fraction(value)


@dataclass(frozen=True)
class Instance:
    n: int
    S1: frozenset
    S2: frozenset
    l: int
    u: int
    S0: frozenset = field(init=False)
    S3: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "S0", self.S1 & self.S2)
        object.__setattr__(self, "S3", self.S1 | self.S2)

    @property
    def s0_empty(self) -> bool:
        return not self.S0

    @property
    def s3_large(self) -> bool:
        return len(self.S3) > self.n - self.l

    @property
    def proper(self) -> bool:
        return bool(self.S0) and len(self.S3) <= self.n - self.l

    @property
    def nested(self) -> bool:
        return self.S1 < self.S2 or self.S2 < self.S1

    @property
    def dim(self) -> int:
        return 4 + self.n

    def sets(self) -> tuple:
        """(S0, S1, S2, S3), indexable by the delta subscript."""
        return (self.S0, self.S1, self.S2, self.S3)

    def __str__(self):
        def fmt(s):
            return "{" + ",".join(map(str, sorted(s))) + "}"

        return f"({self.n},{fmt(self.S1)},{fmt(self.S2)},{self.l},{self.u})"


def new_instance(n: int, S1: Iterable[int], S2: Iterable[int], l: int, u: int) -> Instance:
    S1, S2 = frozenset(S1), frozenset(S2)
    if n < 1:
        raise BoundError(f"n must be positive, got {n}")
    if not 0 <= l <= u <= n:
        raise BoundError(f"need 0 <= l <= u <= n, got l={l}, u={u}, n={n}")
    for name, s in (("S1", S1), ("S2", S2)):
        if not s:
            raise DegenerateSetError(f"{name} is empty")
        bad = [j for j in s if not 1 <= j <= n]
        if bad:
            raise DegenerateSetError(f"{name} has indices outside 1..{n}: {sorted(bad)}")
    if S1 == S2:
        raise DegenerateSetError("S1 and S2 must differ")
    for i, s in ((1, S1), (2, S2)):
        if len(s) > n - l:
            raise ForcedZeroError(i, len(s), n, l)
    return Instance(n, S1, S2, l, u)


def forced_zero_monomials(n: int, S1, S2, l: int) -> list[int]:
    """Monomials (1 or 2) that vanish on every point because ``|S_i| > n - l``."""
    return [i for i, s in ((1, S1), (2, S2)) if len(frozenset(s)) > n - l]


@dataclass(frozen=True)
class Point:
    delta: tuple
    z: tuple

    @classmethod
    def of(cls, delta: Sequence, z: Sequence) -> "Point":
        return cls(tuple(as_rat(v) for v in delta), tuple(as_rat(v) for v in z))

    @classmethod
    def from_coords(cls, coords: Sequence) -> "Point":
        return cls.of(coords[:4], coords[4:])

    @property
    def coords(self) -> tuple:
        return self.delta + self.z

    @property
    def is_binary(self) -> bool:
        return all(v in (0, 1) for v in self.coords)

    def in_unit_box(self) -> bool:
        return all(0 <= v <= 1 for v in self.coords)


def delta_of(inst: Instance, zbits: Sequence[int]) -> tuple:
    """Monomial values for a binary z; ``delta_0 = 1`` when S0 is empty."""
    return tuple(
        int(all(zbits[j - 1] == 0 for j in s)) for s in inst.sets()
    )


def is_feasible(inst: Instance, pt: Point) -> bool:
    if not pt.is_binary:
        raise ValueError("is_feasible expects a binary point")
    if len(pt.z) != inst.n:
        return False
    zbits = tuple(int(v) for v in pt.z)
    return tuple(pt.delta) == delta_of(inst, zbits) and inst.l <= sum(zbits) <= inst.u


def enumerate_points(inst: Instance, cap: int | None = None) -> list[Point]:
    """All points of the set, z in lexicographic order."""
    cap = enum_cap() if cap is None else cap
    if inst.n > cap:
        raise EnumerationCapError(f"n = {inst.n} exceeds the enumeration cap {cap}")
    out = []
    for zbits in itertools.product((0, 1), repeat=inst.n):
        if inst.l <= sum(zbits) <= inst.u:
            out.append(Point(tuple(Fraction(v) for v in delta_of(inst, zbits)),
                             tuple(Fraction(v) for v in zbits)))
    return out


# --- x-space ----------------------------------------------------------------

@dataclass(frozen=True)
class XPolyProblem:
    """Optimize ``beta + g1*prod_{T1} x + g2*prod_{T2} x + c.x`` with ``L <= sum x <= U``."""

    n: int
    T1: frozenset
    T2: frozenset
    gamma: tuple
    beta: Fraction
    c: tuple
    L: int
    U: int
    sense: str = "min"

    def __post_init__(self):
        object.__setattr__(self, "T1", frozenset(self.T1))
        object.__setattr__(self, "T2", frozenset(self.T2))
        object.__setattr__(self, "gamma", tuple(as_rat(g) for g in self.gamma))
        object.__setattr__(self, "beta", as_rat(self.beta))
        c = tuple(as_rat(v) for v in self.c) if self.c else (Fraction(0),) * self.n
        object.__setattr__(self, "c", c)
        if not 0 <= self.L <= self.U <= self.n:
            raise BoundError(f"need 0 <= L <= U <= n, got L={self.L}, U={self.U}")
        if not self.T1 or not self.T2 or self.T1 == self.T2:
            raise DegenerateSetError("T1, T2 must be nonempty and distinct")
        if len(self.gamma) != 2 or len(self.c) != self.n:
            raise InstanceError("gamma needs 2 entries and c needs n entries")
        if self.sense not in ("min", "max"):
            raise InstanceError(f"sense must be min or max, got {self.sense!r}")

    def value(self, x: Sequence[int]) -> Fraction:
        mono = [all(x[j - 1] for j in t) for t in (self.T1, self.T2)]
        return (self.beta + sum(g for g, m in zip(self.gamma, mono) if m)
                + sum(cj * xj for cj, xj in zip(self.c, x)))


def from_x_space(p: XPolyProblem) -> tuple[Instance, tuple, Fraction]:
    """Complement ``z = 1 - x``; returns (instance, objective over (delta, z), offset)."""
    inst = new_instance(p.n, p.T1, p.T2, p.n - p.U, p.n - p.L)
    obj = (Fraction(0), p.gamma[0], p.gamma[1], Fraction(0)) + tuple(-cj for cj in p.c)
    return inst, obj, p.beta + sum(p.c)


def to_x_solution(inst: Instance, pt: Point, objective: Sequence | None = None,
                  offset=0) -> tuple[tuple, Fraction | None]:
    if not is_feasible(inst, pt):
        raise ValueError("point is not in the feasible set")
    x = tuple(1 - int(v) for v in pt.z)
    if objective is None:
        return x, None
    return x, sum(a * v for a, v in zip(objective, pt.coords)) + as_rat(offset)


# --- reformulations -----------------------------------------------------------

@dataclass(frozen=True)
class Augmented:
    instance: Instance
    k0: int
    # original index j sits at position j in the augmented ground set
    new_indices: tuple


def augment(inst: Instance) -> Augmented:
    """Embed ``inst`` as a face of an instance with ``S0 != {}`` and ``|S3| <= n - l``."""
    k0 = 1 if inst.s0_empty else 0
    n_plus = max(inst.n, len(inst.S3) + inst.l) + k0
    S1, S2 = inst.S1, inst.S2
    if k0:
        S1, S2 = S1 | {inst.n + 1}, S2 | {inst.n + 1}
    aug = new_instance(n_plus, S1, S2, inst.l, inst.u)
    return Augmented(aug, k0, tuple(range(inst.n + 1, n_plus + 1)))


def pad_point(pt: Point, n_plus: int) -> Point:
    return Point(pt.delta, pt.z + (Fraction(0),) * (n_plus - len(pt.z)))


@dataclass(frozen=True)
class Reduction:
    """``z_drop = total - sum(other z)``; ``keep`` maps reduced index -> original."""

    instance: Instance
    drop: int
    total: int
    keep: tuple

    def lift(self, pt: Point) -> Point:
        z = [Fraction(0)] * (len(self.keep) + 1)
        for r, j in enumerate(self.keep):
            z[j - 1] = pt.z[r]
        z[self.drop - 1] = self.total - sum(pt.z)
        return Point(pt.delta, tuple(z))

    def project(self, pt: Point) -> Point:
        return Point(pt.delta, tuple(pt.z[j - 1] for j in self.keep))


def reduce_l_eq_u(inst: Instance, drop: int) -> Reduction:
    """Project out ``z_drop`` from an instance with ``l = u``."""
    if inst.l != inst.u or inst.u < 2:
        raise InstanceError(f"reduction needs l = u >= 2, got l={inst.l}, u={inst.u}")
    if drop in inst.S3 or not 1 <= drop <= inst.n:
        raise InstanceError(f"drop index {drop} must lie in J outside S3")
    keep = tuple(j for j in range(1, inst.n + 1) if j != drop)
    pos = {j: r + 1 for r, j in enumerate(keep)}
    red = new_instance(inst.n - 1, {pos[j] for j in inst.S1}, {pos[j] for j in inst.S2},
                       inst.u - 1, inst.u)
    return Reduction(red, drop, inst.u, keep)
