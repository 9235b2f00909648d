"""Text formats: instance JSON, point files, row lines and rationals.

Machine-readable output starts with a ``ccms2/1`` header line.  Rationals are
written as ``p/q`` (integers without the denominator).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .ineqs import LinIneq, fmt_set
from .model import Instance, InstanceError, XPolyProblem, new_instance

HEADER = "ccms2/1"

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


class FormatError(ValueError):
    """Malformed input; the message names the offending field."""


def fmt_rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rat(text, field: str = "value") -> Fraction:
    if isinstance(text, bool):
        raise FormatError(f"{field}: expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str) and _RAT.match(text.strip()):
        try:
            return Fraction(text.strip())
        except ZeroDivisionError:
            pass
    raise FormatError(f"{field}: expected an integer or 'p/q' string, got {text!r}")


def _int(data: dict, key: str) -> int:
    if key not in data:
        raise FormatError(f"missing field '{key}'")
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"field '{key}': expected an integer, got {v!r}")
    return v


def _index_set(data: dict, key: str) -> frozenset:
    if key not in data:
        raise FormatError(f"missing field '{key}'")
    v = data[key]
    if not isinstance(v, list) or any(isinstance(j, bool) or not isinstance(j, int) for j in v):
        raise FormatError(f"field '{key}': expected an array of 1-based indices")
    return frozenset(v)


def _rat_list(data: dict, key: str, default=None) -> tuple:
    if key not in data:
        if default is not None:
            return default
        raise FormatError(f"missing field '{key}'")
    v = data[key]
    if not isinstance(v, list):
        raise FormatError(f"field '{key}': expected an array of rationals")
    return tuple(parse_rat(x, f"field '{key}'") for x in v)


def instance_from_dict(data: dict) -> tuple[Instance, XPolyProblem | None]:
    """The z-space instance and, for ``"space": "x"``, the original problem."""
    if not isinstance(data, dict):
        raise FormatError("instance: expected a JSON object")
    space = data.get("space", "z")
    try:
        if space == "z":
            return new_instance(_int(data, "n"), _index_set(data, "S1"), _index_set(data, "S2"),
                                _int(data, "l"), _int(data, "u")), None
        if space == "x":
            n = _int(data, "n")
            gamma = _rat_list(data, "gamma")
            p = XPolyProblem(n, _index_set(data, "T1"), _index_set(data, "T2"), gamma,
                             parse_rat(data.get("beta", 0), "field 'beta'"),
                             _rat_list(data, "c", (Fraction(0),) * n),
                             _int(data, "L"), _int(data, "U"), data.get("sense", "min"))
            for key, s in (("T1", p.T1), ("T2", p.T2)):
                if any(not 1 <= j <= n for j in s):
                    raise FormatError(f"field '{key}': indices must lie in 1..{n}")
            return None, p
    except InstanceError as exc:
        raise FormatError(f"instance: {exc}") from exc
    raise FormatError(f"field 'space': expected 'z' or 'x', got {space!r}")


def load_instance(text: str) -> tuple[Instance, XPolyProblem | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"instance: invalid JSON ({exc.msg}, line {exc.lineno})") from exc
    inst, p = instance_from_dict(data)
    if p is not None:
        from .model import from_x_space
        try:
            inst = from_x_space(p)[0]
        except InstanceError as exc:
            raise FormatError(f"instance: {exc}") from exc
    return inst, p


def instance_to_dict(inst: Instance) -> dict:
    return {"n": inst.n, "S1": sorted(inst.S1), "S2": sorted(inst.S2), "l": inst.l, "u": inst.u}


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst))


# --- points and vectors ---------------------------------------------------------------

def parse_vector(line: str, field: str = "point") -> tuple:
    return tuple(parse_rat(tok, f"{field} entry {k + 1}") for k, tok in enumerate(line.split()))


def parse_points(text: str, dim: int | None = None) -> list[tuple]:
    """Whitespace-separated rationals, one point per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith(HEADER):
            continue
        vec = parse_vector(line, f"line {lineno}")
        if dim is not None and len(vec) != dim:
            raise FormatError(f"line {lineno}: expected {dim} values, got {len(vec)}")
        out.append(vec)
    return out


def fmt_vector(vec: Iterable) -> str:
    return " ".join(fmt_rat(v) for v in vec)


# --- rows -------------------------------------------------------------------------------

def row_line(row: LinIneq) -> str:
    """``family;params;Q;a_delta;a_z;rhs``."""
    params = ",".join(map(str, row.params))
    Q = "" if row.Q is None else fmt_set(row.Q)
    a = row.coeffs
    return ";".join([row.family, params, Q, ",".join(fmt_rat(v) for v in a[:4]),
                     ",".join(fmt_rat(v) for v in a[4:]), fmt_rat(row.rhs)])


def parse_row_line(line: str) -> LinIneq:
    parts = line.strip().split(";")
    if len(parts) != 6:
        raise FormatError(f"row: expected 6 ';'-separated fields, got {len(parts)}")
    family, params, Q, ad, az, rhs = parts
    if not family:
        raise FormatError("row: empty family field")
    try:
        params = tuple(int(p) for p in params.split(",")) if params else ()
    except ValueError as exc:
        raise FormatError(f"row params: {params!r} is not a list of integers") from exc
    if Q:
        if not (Q.startswith("{") and Q.endswith("}")):
            raise FormatError(f"row Q: expected {{...}}, got {Q!r}")
        body = Q[1:-1]
        try:
            Q = frozenset(int(j) for j in body.split(",")) if body else frozenset()
        except ValueError as exc:
            raise FormatError(f"row Q: {Q!r} is not an index set") from exc
    else:
        Q = None
    ad = tuple(parse_rat(v, "row delta coefficient") for v in ad.split(","))
    if len(ad) != 4:
        raise FormatError(f"row: expected 4 delta coefficients, got {len(ad)}")
    az = tuple(parse_rat(v, "row z coefficient") for v in az.split(",")) if az else ()
    coeffs = tuple(int(v) if v.denominator == 1 else v for v in ad + az)
    r = parse_rat(rhs, "row rhs")
    return LinIneq(coeffs, int(r) if r.denominator == 1 else r, family, params, Q)


def parse_rows(text: str) -> list[LinIneq]:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(HEADER) or line.startswith("#"):
            continue
        rows.append(parse_row_line(line))
    return rows


def rows_text(rows: Sequence[LinIneq], machine: bool = True) -> str:
    if machine:
        return "\n".join([f"{HEADER} rows"] + [row_line(r) for r in rows]) + "\n"
    return "".join(f"{r.label():<24} {r}\n" for r in rows)
