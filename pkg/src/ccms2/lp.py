"""Exact rational linear programming.

The solver works on the inequality form ``max c.y  s.t.  G y <= h`` where every
internal column has a finite lower bound (free model variables are split).
A basis is a set of ``N`` linearly independent tight rows, so the working
matrix is ``N x N`` no matter how many rows the model has.  Primal steps
release a tight row, dual steps bring a violated row in; both use Bland's
smallest-index rule, which rules out cycling.  Rows are scaled to integer
data so that pricing over all rows is integer arithmetic.
"""
from __future__ import annotations

import copy
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"
_INT64_SAFE = 2 ** 62


def _rat(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError(f"float {v!r} in LP data; exact rationals only")
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class LPModel:
    """``sense c.x`` subject to rows ``(coeffs, rhs, rel)`` and per-variable bounds.

    ``rel`` is one of ``<=``, ``>=``, ``=``; a bound of ``None`` is infinite.
    """

    nvars: int
    objective: tuple
    sense: str = "max"
    rows: tuple = ()
    bounds: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(_rat(v) for v in self.objective))
        if len(self.objective) != self.nvars:
            raise ValueError("objective length differs from nvars")
        if self.sense not in ("max", "min"):
            raise ValueError(f"bad sense {self.sense!r}")
        rows = []
        for coeffs, rhs, rel in self.rows:
            if len(coeffs) != self.nvars:
                raise ValueError("row width differs from nvars")
            if rel not in ("<=", ">=", "="):
                raise ValueError(f"bad relation {rel!r}")
            rows.append((tuple(_rat(a) for a in coeffs), _rat(rhs), rel))
        object.__setattr__(self, "rows", tuple(rows))
        bounds = self.bounds or ((None, None),) * self.nvars
        bounds = tuple((None if lo is None else _rat(lo), None if hi is None else _rat(hi))
                       for lo, hi in bounds)
        for lo, hi in bounds:
            if lo is not None and hi is not None and lo > hi:
                raise ValueError("bound with lo > hi")
        object.__setattr__(self, "bounds", bounds)
        if len(bounds) != self.nvars:
            raise ValueError("bounds length differs from nvars")

    def with_rows(self, rows) -> "LPModel":
        return replace(self, rows=self.rows + tuple(rows))

    def with_objective(self, objective, sense: str | None = None) -> "LPModel":
        return replace(self, objective=tuple(objective), sense=sense or self.sense)

    def with_bounds(self, bounds) -> "LPModel":
        return replace(self, bounds=tuple(bounds))


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    point: tuple | None = None
    basis: tuple | None = None
    duals: tuple | None = None
    bound_duals: tuple | None = None
    dual_value: Fraction | None = None
    ray: tuple | None = None
    farkas: tuple | None = None
    pivots: int = 0
    model: LPModel | None = field(default=None, repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Form:
    """Integer inequality form of a model: columns, rows, and their origin."""

    def __init__(self, model: LPModel):
        self.model = model
        self.col_of = []  # model var -> list of (col, sign)
        ncols = 0
        lb_rows, ub_rows = [], []
        for j, (lo, hi) in enumerate(model.bounds):
            if lo is not None:
                self.col_of.append([(ncols, 1)])
                lb_rows.append(({ncols: -1}, -lo, ("lo", j)))
                ncols += 1
            else:
                self.col_of.append([(ncols, 1), (ncols + 1, -1)])
                lb_rows.append(({ncols: -1}, Fraction(0), ("split", j)))
                lb_rows.append(({ncols + 1: -1}, Fraction(0), ("split", j)))
                ncols += 2
            if hi is not None:
                ub_rows.append(({c: s for c, s in self.col_of[j]}, hi, ("hi", j)))
        self.ncols = ncols
        self.G, self.h, self.origin, self.scale = [], [], [], []
        for sparse, rhs, origin in lb_rows + ub_rows:
            self._add(sparse, rhs, origin)
        self.nfixed = len(self.G)
        for r, (coeffs, rhs, rel) in enumerate(model.rows):
            self.add_model_row(r, coeffs, rhs, rel)
        c = [Fraction(0)] * ncols
        sgn = 1 if model.sense == "max" else -1
        for j, cj in enumerate(model.objective):
            for col, s in self.col_of[j]:
                c[col] += sgn * s * cj
        self.c = c
        self._np = None

    def _expand(self, coeffs) -> dict:
        out = {}
        for j, a in enumerate(coeffs):
            if a:
                for col, s in self.col_of[j]:
                    out[col] = out.get(col, 0) + s * a
        return out

    def add_model_row(self, r, coeffs, rhs, rel):
        sparse = self._expand(coeffs)
        if rel in ("<=", "="):
            self._add(sparse, rhs, ("row", r, 1))
        if rel in (">=", "="):
            self._add({k: -v for k, v in sparse.items()}, -rhs, ("row", r, -1))

    def _add(self, sparse, rhs, origin):
        vals = list(sparse.values()) + [rhs]
        scale = math.lcm(*(Fraction(v).denominator for v in vals))
        row = [0] * self.ncols
        for k, v in sparse.items():
            row[k] = int(v * scale)
        self.G.append(row)
        self.h.append(int(rhs * scale))
        self.origin.append(origin)
        self.scale.append(scale)

    def arrays(self):
        if self._np is None or self._np[0].shape[0] != len(self.G):
            G = np.array(self.G, dtype=object).reshape(len(self.G), self.ncols)
            h = np.array(self.h, dtype=object)
            gmax = max((abs(v) for row in self.G for v in row), default=0)
            hmax = max((abs(v) for v in self.h), default=0)
            G64 = G.astype(np.int64) if gmax < _INT64_SAFE else None
            h64 = h.astype(np.int64) if hmax < _INT64_SAFE else None
            self._np = (G, h, G64, h64, gmax, hmax)
        return self._np


def _common(vec: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(v.denominator for v in vec)) if vec else 1
    return [int(v * den) for v in vec], den


def _matvec(form: _Form, vec: list[int], den: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (G @ vec, h * den) with exact integers."""
    G, h, G64, h64, gmax, hmax = form.arrays()
    vmax = sum(abs(v) for v in vec)
    if G64 is not None and h64 is not None and gmax * vmax < _INT64_SAFE \
            and hmax * den < _INT64_SAFE and vmax < _INT64_SAFE:
        return G64 @ np.array(vec, dtype=np.int64), h64 * den
    return G.dot(np.array(vec, dtype=object)), h * den


def _inverse(rows: list[list[int]]) -> list[list[Fraction]] | None:
    n = len(rows)
    a = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


class _Simplex:
    def __init__(self, form: _Form, basis: Sequence[int]):
        self.form = form
        self.N = form.ncols
        self.basis = list(basis)
        self.pivots = 0
        inv = _inverse([form.G[k] for k in self.basis])
        if inv is None:
            raise np.linalg.LinAlgError("singular basis")
        self.Binv = inv

    # x = B^-1 h_B
    def x(self) -> list[Fraction]:
        hb = [self.form.h[k] for k in self.basis]
        return [sum((b * v for b, v in zip(row, hb) if b), Fraction(0)) for row in self.Binv]

    def row_times_binv(self, vec) -> list[Fraction]:
        N, Binv = self.N, self.Binv
        out = [Fraction(0)] * N
        for j, a in enumerate(vec):
            if a:
                rj = Binv[j]
                for i in range(N):
                    if rj[i]:
                        out[i] += a * rj[i]
        return out

    def pivot(self, i: int, k: int, w: list[Fraction]) -> None:
        """Replace basis position ``i`` by row ``k``; ``w = a_k B^-1``."""
        Binv, N = self.Binv, self.N
        wi = w[i]
        col_i = [Binv[r][i] / wi for r in range(N)]
        for r in range(N):
            row = Binv[r]
            for j in range(N):
                if j != i and w[j]:
                    row[j] -= w[j] * col_i[r]
            row[i] = col_i[r]
        self.basis[i] = k
        self.pivots += 1

    def slacks(self):
        x = self.x()
        xnum, den = _common(x)
        gx, hd = _matvec(self.form, xnum, den)
        return x, hd - gx  # slack * den

    def dual_loop(self, c) -> tuple[str, object]:
        """Restore primal feasibility keeping ``c = lam B`` with ``lam >= 0``."""
        while True:
            x, slack = self.slacks()
            viol = np.flatnonzero(slack < 0)
            if viol.size == 0:
                return OPTIMAL, None
            k = int(viol[0])
            w = self.row_times_binv(self.form.G[k])
            lam = self.row_times_binv(c)
            best = None
            for i in range(self.N):
                if w[i] > 0:
                    t = lam[i] / w[i]
                    if best is None or t < best[0] or (t == best[0] and self.basis[i] < best[2]):
                        best = (t, i, self.basis[i])
            if best is None:
                y = {k: Fraction(1)}
                for i in range(self.N):
                    if w[i]:
                        y[self.basis[i]] = y.get(self.basis[i], 0) - w[i]
                return INFEASIBLE, y
            self.pivot(best[1], k, w)

    def primal_loop(self, c) -> tuple[str, object]:
        in_basis = set(self.basis)
        while True:
            lam = self.row_times_binv(c)
            neg = [i for i in range(self.N) if lam[i] < 0]
            if not neg:
                return OPTIMAL, lam
            i = min(neg, key=lambda p: self.basis[p])
            d = [-self.Binv[r][i] for r in range(self.N)]
            x, slack = self.slacks()
            dnum, dden = _common(d)
            gd, _ = _matvec(self.form, dnum, 1)
            k = _ratio_test(gd, slack, in_basis)
            if k is None:
                return UNBOUNDED, d
            w = self.row_times_binv(self.form.G[k])
            in_basis.discard(self.basis[i])
            in_basis.add(k)
            self.pivot(i, k, w)


def _ratio_test(gd, slack, in_basis) -> int | None:
    """Smallest-index row attaining ``min slack_k / gd_k`` over ``gd_k > 0``."""
    cand = [int(k) for k in np.flatnonzero(gd > 0) if int(k) not in in_basis]
    if not cand:
        return None
    zero = [k for k in cand if slack[k] == 0]
    if zero:
        return zero[0]
    approx = [float(slack[k]) / float(gd[k]) for k in cand]
    cut = min(approx) * (1 + 1e-9)
    best = None
    for k, a in zip(cand, approx):
        if a <= cut:
            t = Fraction(int(slack[k]), int(gd[k]))
            if best is None or t < best[0]:
                best = (t, k)
    return best[1]


def _map_multipliers(form: _Form, y: dict) -> tuple[tuple, tuple]:
    """Internal row multipliers -> (per model row, per variable (lo, hi))."""
    model = form.model
    rows = [Fraction(0)] * len(model.rows)
    bnd = [[Fraction(0), Fraction(0)] for _ in range(model.nvars)]
    for k, v in y.items():
        if not v:
            continue
        origin, s = form.origin[k], form.scale[k]
        if origin[0] == "row":
            rows[origin[1]] += origin[2] * v * s
        elif origin[0] == "lo":
            bnd[origin[1]][0] += v * s
        elif origin[0] == "hi":
            bnd[origin[1]][1] += v * s
    return tuple(rows), tuple(tuple(b) for b in bnd)


def _model_point(form: _Form, yvals: Sequence[Fraction]) -> tuple:
    return tuple(sum((s * yvals[c] for c, s in cols), Fraction(0)) for cols in form.col_of)


def solve(model: LPModel, basis: Sequence[int] | None = None) -> LPResult:
    """Exact optimum of ``model``; ``basis`` from an earlier result warm-starts."""
    form = _Form(model)
    return _run(form, basis)


def _run(form: _Form, basis) -> LPResult:
    N = form.ncols
    sx = None
    if basis is not None and len(basis) == N and max(basis, default=-1) < len(form.G):
        try:
            sx = _Simplex(form, basis)
        except np.linalg.LinAlgError:
            sx = None
    pivots = 0
    if sx is not None:
        _, slack = sx.slacks()
        if (slack < 0).any():
            lam = sx.row_times_binv(form.c)
            if any(v < 0 for v in lam):
                sx = None
            else:
                status, cert = sx.dual_loop(form.c)
                if status == INFEASIBLE:
                    return _infeasible(form, cert, sx.pivots)
    if sx is None:
        # phase 1: lower-bound rows are a basis that is dual feasible for -sum(y)
        sx = _Simplex(form, range(N))
        status, cert = sx.dual_loop([Fraction(-1)] * N)
        if status == INFEASIBLE:
            return _infeasible(form, cert, sx.pivots)
    status, info = sx.primal_loop(form.c)
    pivots += sx.pivots
    if status == UNBOUNDED:
        ray = _model_point(form, info)
        return LPResult(UNBOUNDED, ray=ray, basis=tuple(sx.basis), pivots=pivots,
                        model=form.model)
    lam = info
    x = sx.x()
    point = _model_point(form, x)
    model = form.model
    value = sum((c * v for c, v in zip(model.objective, point)), Fraction(0))
    y = {k: lam[i] for i, k in enumerate(sx.basis)}
    duals, bduals = _map_multipliers(form, y)
    sgn = 1 if model.sense == "max" else -1
    if sgn < 0:
        duals = tuple(-v for v in duals)
    bduals = tuple((sgn * a, sgn * b) for a, b in bduals)
    dual_value = sum((d * model.rows[r][1] for r, d in enumerate(duals) if d), Fraction(0))
    for (lo_m, hi_m), (lo, hi) in zip(bduals, model.bounds):
        if lo_m:
            dual_value -= lo_m * lo
        if hi_m:
            dual_value += hi_m * hi
    return LPResult(OPTIMAL, value, point, tuple(sx.basis), duals, bduals, dual_value,
                    pivots=pivots, model=model)


def _infeasible(form: _Form, y: dict, pivots: int) -> LPResult:
    return LPResult(INFEASIBLE, farkas=_map_multipliers(form, y), pivots=pivots,
                    model=form.model)


def resolve_with_rows(model: LPModel, prior: LPResult, rows) -> LPResult:
    """Optimum after appending ``rows``; warm-starts from ``prior``'s basis."""
    return solve(model.with_rows(rows), basis=prior.basis)


class Session:
    """Repeated solves over one row set, each warm-started from the last basis.

    Rows may be appended with :meth:`add_rows`; the integer form is extended
    in place rather than rebuilt.
    """

    def __init__(self, model: LPModel):
        self.form = _Form(model)
        self.basis = None
        self.pivots = 0

    @property
    def model(self) -> LPModel:
        return self.form.model

    def add_rows(self, rows) -> None:
        model = self.form.model.with_rows(rows)
        start = len(self.form.model.rows)
        self.form.model = model
        for r in range(start, len(model.rows)):
            self.form.add_model_row(r, *model.rows[r])

    def solve(self, objective=None, sense: str | None = None) -> LPResult:
        if objective is not None or sense is not None:
            model = copy.copy(self.form.model)
            if objective is not None:
                object.__setattr__(model, "objective", tuple(_rat(v) for v in objective))
            if sense is not None:
                object.__setattr__(model, "sense", sense)
            self.form.model = model
            sgn = 1 if model.sense == "max" else -1
            c = [Fraction(0)] * self.form.ncols
            for j, cj in enumerate(model.objective):
                for col, s in self.form.col_of[j]:
                    c[col] += sgn * s * cj
            self.form.c = c
        res = _run(self.form, self.basis)
        self.pivots += res.pivots
        if res.basis is not None:
            self.basis = res.basis
        return res


# --- verification helpers --------------------------------------------------------

def check_feasible(model: LPModel, point: Sequence) -> bool:
    for coeffs, rhs, rel in model.rows:
        lhs = sum(a * v for a, v in zip(coeffs, point))
        if (rel == "<=" and lhs > rhs) or (rel == ">=" and lhs < rhs) or (rel == "=" and lhs != rhs):
            return False
    for v, (lo, hi) in zip(point, model.bounds):
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            return False
    return True


def check_farkas(model: LPModel, farkas) -> bool:
    """``y G = 0`` and ``y h < 0`` for the certificate in model terms."""
    rows_y, bnd_y = farkas
    comb = [Fraction(0)] * model.nvars
    rhs = Fraction(0)
    for y, (coeffs, b, rel) in zip(rows_y, model.rows):
        if (rel == "<=" and y < 0) or (rel == ">=" and y > 0):
            return False
        for j, a in enumerate(coeffs):
            comb[j] += y * a
        rhs += y * b
    for j, ((ylo, yhi), (lo, hi)) in enumerate(zip(bnd_y, model.bounds)):
        if ylo < 0 or yhi < 0:
            return False
        comb[j] += yhi - ylo
        if ylo:
            rhs -= ylo * lo
        if yhi:
            rhs += yhi * hi
    # free variables were split, so their combination must vanish as well
    return all(v == 0 for v in comb) and rhs < 0


# --- LP text format -----------------------------------------------------------------

def _fmt_num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _fmt_expr(coeffs, names) -> str:
    parts = []
    for a, name in zip(coeffs, names):
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        parts.append(f"{sign} {name}" if mag == 1 else f"{sign} {_fmt_num(mag)} {name}")
    if not parts:
        return "0 " + names[0]
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def write_lp(model: LPModel, row_names: Sequence[str] | None = None) -> str:
    """CPLEX LP text.  Rows are scaled to integers; the objective scale is recorded."""
    names = list(model.names) or [f"x{j + 1}" for j in range(model.nvars)]
    oscale = math.lcm(*(v.denominator for v in model.objective)) if model.nvars else 1
    out = [f"\\ ccms2/1 objective-scale {oscale}",
           "Maximize" if model.sense == "max" else "Minimize",
           " obj: " + _fmt_expr([v * oscale for v in model.objective], names),
           "Subject To"]
    for r, (coeffs, rhs, rel) in enumerate(model.rows):
        s = math.lcm(*(Fraction(v).denominator for v in list(coeffs) + [rhs]))
        label = row_names[r] if row_names else f"r{r + 1}"
        out.append(f" {label}: {_fmt_expr([a * s for a in coeffs], names)} {rel} {_fmt_num(rhs * s)}")
    out.append("Bounds")
    for name, (lo, hi) in zip(names, model.bounds):
        if lo is None and hi is None:
            out.append(f" {name} free")
        else:
            los = "-inf" if lo is None else _fmt_num(lo)
            his = "+inf" if hi is None else _fmt_num(hi)
            out.append(f" {los} <= {name} <= {his}")
    out.append("End")
    return "\n".join(out) + "\n"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*([A-Za-z_][\w.]*)")


def _parse_expr(expr: str, index: dict, n: int) -> list[Fraction]:
    coeffs = [Fraction(0)] * n
    for sign, num, name in _TERM.findall(expr):
        if name not in index:
            raise ValueError(f"unknown variable {name!r}")
        v = Fraction(num) if num else Fraction(1)
        coeffs[index[name]] += -v if sign == "-" else v
    return coeffs


def read_lp(text: str, names: Sequence[str]) -> LPModel:
    """Parse the subset of LP format written by :func:`write_lp`."""
    index = {nm: j for j, nm in enumerate(names)}
    n = len(names)
    oscale = 1
    sense, objective, rows = "max", None, []
    bounds = [(Fraction(0), None)] * n
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            m = re.search(r"objective-scale (\d+)", line)
            if m:
                oscale = int(m.group(1))
            continue
        low = line.lower()
        if low in ("maximize", "minimize"):
            sense, section = low[:3], "obj"
            continue
        if low in ("subject to", "bounds", "end"):
            section = low
            continue
        if section == "obj":
            expr = line.split(":", 1)[-1]
            objective = [v / oscale for v in _parse_expr(expr, index, n)]
        elif section == "subject to":
            body = line.split(":", 1)[-1]
            m = re.match(r"(.*?)(<=|>=|=)\s*([+-]?\d+(?:/\d+)?)\s*$", body)
            rows.append((_parse_expr(m.group(1), index, n), Fraction(m.group(3)), m.group(2)))
        elif section == "bounds":
            m = re.match(r"(\S+)\s+free$", line)
            if m:
                bounds[index[m.group(1)]] = (None, None)
                continue
            m = re.match(r"(\S+)\s*<=\s*(\S+)\s*<=\s*(\S+)$", line)
            lo, name, hi = m.groups()
            bounds[index[name]] = (None if lo == "-inf" else Fraction(lo),
                                   None if hi == "+inf" else Fraction(hi))
    return LPModel(n, tuple(objective), sense, tuple(rows), tuple(bounds), tuple(names))
