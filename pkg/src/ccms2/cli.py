"""Command line: ``ccms2 {enumerate,gen,separate,solve,verify}``.

Exit codes: 0 success, 1 bad input, and for ``solve`` 2 infeasible, 3 round
cap; ``verify`` exits 1 when any check fails.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys

from .formats import (
    HEADER, FormatError, fmt_rat, fmt_vector, load_instance, parse_points, row_line, rows_text,
)
from .ineqs import (
    FAMILIES, FAMILY_COLUMNS, all_family_ineqs, base_system, family_ineq, family_rows, subsets,
    var_names,
)
from .lp import INFEASIBLE, OPTIMAL, LPModel, write_lp
from .model import InstanceError, Point, enumerate_points
from .separation import separate_all, separate_family
from .solver import DEFAULT_MAX_ROUNDS, ROUND_CAP, optimize, solve_x_problem
from .verify import CHECKS, DEFAULT_CHECKS, INSTANCE_KINDS, instance_matrix, verify_instance

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_ROUND_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which solve reserves for infeasibility
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _int_list(text: str, what: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from exc


def _params_for(family: str, given: str | None) -> list[tuple]:
    options = [p for f, p in FAMILY_COLUMNS if f == family]
    if given is None:
        return options
    params = _int_list(given, "--params")
    if params not in options:
        raise UsageError(f"--params: {family} takes one of {options}, got {params}")
    return [params]


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ----------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    inst, _ = load_instance(_read(args.instance))
    pts = enumerate_points(inst)
    lines = [fmt_vector(p.coords) for p in pts]
    if args.format == "machine":
        lines.insert(0, f"{HEADER} points {len(pts)}")
    _emit(args, "".join(line + "\n" for line in lines))
    return EXIT_OK


def _gen_rows(args, inst):
    if args.family:
        if args.family not in FAMILIES:
            raise UsageError(f"--family: unknown family {args.family!r}")
        plist = _params_for(args.family, args.params)
        qs = [frozenset(_int_list(args.q, "--q"))] if args.q is not None else list(subsets(inst.n))
        rows = []
        for params in plist:
            for Q in qs:
                try:
                    row = family_ineq(inst, args.family, params, Q)
                except ValueError as exc:
                    raise UsageError(f"--q: {exc}") from exc
                if row:
                    rows.append(row)
                elif args.q is not None:
                    raise UsageError(f"--q: {args.family} not applicable: {row.reason}")
        return rows
    if args.q is not None or args.params is not None:
        raise UsageError("--q and --params need --family")
    return list(all_family_ineqs(inst)) if args.all_q else base_system(inst)


def cmd_gen(args) -> int:
    inst, _ = load_instance(_read(args.instance))
    rows = _gen_rows(args, inst)
    if args.format == "lp":
        obj = (0,) * inst.dim
        if args.objective:
            obj = _objective(args.objective, inst.dim)
        model = LPModel(inst.dim, obj, args.sense, tuple((r.coeffs, r.rhs, "<=") for r in rows),
                        ((0, 1),) * inst.dim, tuple(var_names(inst.n)))
        _emit(args, write_lp(model, [_lp_label(r, k) for k, r in enumerate(rows)]))
    else:
        _emit(args, rows_text(rows, machine=args.format == "machine"))
    return EXIT_OK


def _lp_label(row, k: int) -> str:
    tag = row.family + "".join(f"_{p}" for p in row.params)
    return f"{tag}_{k + 1}"


def _objective(path: str, dim: int) -> tuple:
    vecs = parse_points(_read(path), dim)
    if len(vecs) != 1:
        raise UsageError(f"objective file {path}: expected exactly one line of {dim} rationals")
    return vecs[0]


def cmd_separate(args) -> int:
    inst, _ = load_instance(_read(args.instance))
    points = parse_points(_read(args.points), inst.dim)
    if not points:
        raise UsageError(f"{args.points}: no points")
    machine = args.format == "machine"
    out = [f"{HEADER} cuts"] if machine else []
    for k, vec in enumerate(points, 1):
        if not all(0 <= v <= 1 for v in vec):
            raise UsageError(f"point {k}: coordinates must lie in [0, 1]")
        pt = Point.from_coords(vec)
        if args.family:
            cuts = [c for params in _params_for(args.family, args.params)
                    if (c := separate_family(inst, args.family, params, pt)) is not None]
        else:
            cuts = separate_all(inst, pt)
        if machine:
            out += [f"{k};{fmt_rat(c.violation)};{row_line(c.ineq)}" for c in cuts]
        else:
            out.append(f"point {k}: {len(cuts)} violated" if cuts else f"point {k}: no violated row")
            out += [f"  {fmt_rat(c.violation):>8}  {c.ineq.label():<24} {c.ineq}" for c in cuts]
    _emit(args, "".join(line + "\n" for line in out))
    return EXIT_OK


def _solve_lines(rep, inst, machine: bool, show_trace: bool) -> list[str]:
    trace = rep.trace if show_trace else []
    cuts = ",".join(f"{f}={n}" for f, n in sorted(rep.cuts.items()))
    if machine:
        lines = [f"{HEADER} solve", f"status;{rep.status}"]
        if rep.value is not None:
            lines.append(f"value;{fmt_rat(rep.value)}")
        if rep.point is not None:
            lines.append(f"point;{fmt_vector(rep.point.coords)}")
        if rep.x is not None:
            lines.append(f"x;{fmt_vector(rep.x)}")
        lines += [f"rounds;{rep.rounds}", f"cuts;{cuts}", f"pivots;{rep.pivots}"]
        lines += [f"round;{t.round};{fmt_rat(t.value)};{t.cuts};{' '.join(t.families)}"
                  for t in trace]
        return lines
    lines = [f"instance {inst}", f"status   {rep.status}"]
    if rep.value is not None:
        lines.append(f"value    {fmt_rat(rep.value)}")
    if rep.point is not None:
        lines.append(f"point    {fmt_vector(rep.point.coords)}")
    if rep.x is not None:
        lines.append(f"x        {fmt_vector(rep.x)}")
    lines += [f"rounds   {rep.rounds}", f"cuts     {rep.total_cuts} {cuts}".rstrip(),
              f"pivots   {rep.pivots}"]
    for t in trace:
        fams = " ".join(t.families)
        lines.append(f"round {t.round:>3}  value {fmt_rat(t.value):>10}  +{t.cuts} {fams}".rstrip())
    return lines


def cmd_solve(args) -> int:
    inst, xprob = load_instance(_read(args.instance))
    want_trace = args.trace or bool(args.report)
    if xprob is not None:
        if args.objective:
            raise UsageError("x-space instances carry their objective; drop the objective file")
        if args.sense:
            xprob = type(xprob)(xprob.n, xprob.T1, xprob.T2, xprob.gamma, xprob.beta, xprob.c,
                                xprob.L, xprob.U, args.sense)
        rep = solve_x_problem(xprob, args.max_rounds, want_trace)
    else:
        if not args.objective:
            raise UsageError("objective file required for z-space instances")
        obj = _objective(args.objective, inst.dim)
        rep = optimize(inst, obj, args.sense or "max", args.max_rounds, want_trace)
    lines = _solve_lines(rep, inst, args.format == "machine", args.trace)
    _emit(args, "".join(line + "\n" for line in lines))
    if args.emit_lp and rep.model is not None:
        names = tuple(var_names(inst.n))
        model = LPModel(rep.model.nvars, rep.model.objective, rep.model.sense, rep.model.rows,
                        rep.model.bounds, names)
        with open(args.emit_lp, "w") as fh:
            fh.write(write_lp(model))
    if args.report:
        _solve_report(args.report, rep, inst)
    if rep.status == OPTIMAL:
        return EXIT_OK
    return EXIT_INFEASIBLE if rep.status == INFEASIBLE else EXIT_ROUND_CAP


def _solve_report(directory: str, rep, inst) -> None:
    from .plotting import plot_trace

    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "trace.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["round", "value", "new_cuts", "families"])
        for t in rep.trace:
            w.writerow([t.round, fmt_rat(t.value), t.cuts, " ".join(t.families)])
    plot_trace(rep.trace, os.path.join(directory, "trace.png"), f"{inst} {rep.status}")


def cmd_verify(args) -> int:
    checks = []
    for c in args.check or ["default"]:
        checks += [x for x in c.split(",") if x]
    if checks == ["default"]:
        checks = list(DEFAULT_CHECKS)
    for c in checks:
        if c not in CHECKS:
            raise UsageError(f"--check: unknown check {c!r}; choose from {', '.join(CHECKS)}")
    if args.trials < 1:
        raise UsageError("--trials: must be at least 1")
    if args.instance:
        inst, _ = load_instance(_read(args.instance))
        targets = [("file", inst)]
    else:
        kinds = args.kinds.split(",") if args.kinds else INSTANCE_KINDS
        bad = [k for k in kinds if k not in INSTANCE_KINDS]
        if bad:
            raise UsageError(f"--kinds: unknown kind {bad[0]!r}")
        ns = _int_list(args.n, "--n") if args.n else range(4, 9)
        if any(n not in range(4, 9) for n in ns):
            raise UsageError("--n: the matrix covers n = 4..8")
        targets = instance_matrix(ns, kinds)
    machine = args.format == "machine"
    out = [f"{HEADER} verify seed={args.seed} trials={args.trials}"] if machine else []
    ok = True
    table = []
    for kind, inst in targets:
        rep = verify_instance(inst, checks, args.trials, args.seed)
        ok = ok and rep.passed
        for c in rep.checks:
            status = "info" if c.info else ("pass" if c.passed else "FAIL")
            table.append((kind, str(inst), c.name, status, c.detail))
            if machine:
                out.append(f"{c.name};{inst};{status};{c.detail}")
            else:
                out.append(f"{kind:<9} {inst} {c.line()}")
    failed = sum(1 for row in table if row[3] == "FAIL")
    out.append(f"{'summary;' if machine else 'summary: '}{len(table) - failed} ok, {failed} failed")
    _emit(args, "".join(line + "\n" for line in out))
    if args.report:
        _verify_report(args.report, table)
    return EXIT_OK if ok else EXIT_INPUT


def _verify_report(directory: str, table) -> None:
    from .plotting import plot_verify

    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "summary.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "instance", "check", "status", "detail"])
        w.writerows(table)
    instances = list(dict.fromkeys(f"{k} {i}" for k, i, *_ in table))
    checks = list(dict.fromkeys(c for _, _, c, *_ in table))
    status = {(f"{k} {i}", c): s for k, i, c, s, _ in table}
    plot_verify(instances, checks, status, os.path.join(directory, "summary.png"))


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccms2", description="Two-monomial cardinality constrained multilinear sets: "
                                          "hull inequalities, separation and exact cutting planes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats, default):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    sp = sub.add_parser("enumerate", help="list the feasible binary points")
    sp.add_argument("instance", help="instance JSON file ('-' for stdin)")
    common(sp, ["human", "machine"], "human")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("gen", help="print the base system, a family or the full system")
    sp.add_argument("instance")
    sp.add_argument("--all-q", action="store_true", help="base rows plus every family row")
    sp.add_argument("--family", help="one family, U1..U5 or L1..L5")
    sp.add_argument("--params", help="family parameters, e.g. 1,2 for U3 or 2 for L4")
    sp.add_argument("--q", help="the set Q as comma-separated indices (default: all Q)")
    sp.add_argument("--objective", help="objective file for --format lp")
    sp.add_argument("--sense", choices=["min", "max"], default="max")
    common(sp, ["machine", "human", "lp"], "machine")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("separate", help="most violated rows at each point of a point file")
    sp.add_argument("instance")
    sp.add_argument("points", help="one point per line: d0 d1 d2 d3 z1 .. zn")
    sp.add_argument("--family")
    sp.add_argument("--params")
    common(sp, ["human", "machine"], "human")
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("solve", help="exact optimum by cutting planes")
    sp.add_argument("instance")
    sp.add_argument("objective", nargs="?", help="one line of 4+n rationals (z-space instances)")
    sp.add_argument("--sense", choices=["min", "max"])
    sp.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS)
    sp.add_argument("--trace", action="store_true", help="per-round value and cut log")
    sp.add_argument("--emit-lp", metavar="PATH", help="write the final LP in LP text format")
    sp.add_argument("--report", metavar="DIR", help="write trace.csv and trace.png")
    common(sp, ["human", "machine"], "human")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="exhaustive checks on an instance or the test matrix")
    sp.add_argument("instance", nargs="?", help="instance file (default: the built-in matrix)")
    sp.add_argument("--check", action="append",
                    help=f"check name, repeatable or comma-separated: {', '.join(CHECKS)}")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", help="matrix sizes, e.g. 4,5 (default 4..8)")
    sp.add_argument("--kinds", help=f"matrix kinds: {', '.join(INSTANCE_KINDS)}")
    sp.add_argument("--report", metavar="DIR", help="write summary.csv and summary.png")
    common(sp, ["human", "machine"], "human")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_rounds", 1) < 0:
            raise UsageError("--max-rounds: must be nonnegative")
        return args.func(args)
    except (UsageError, FormatError, InstanceError) as exc:
        print(f"ccms2: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


run = main

if __name__ == "__main__":
    sys.exit(main())
