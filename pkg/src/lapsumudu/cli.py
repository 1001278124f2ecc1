"""Command-line front end.

Exit codes: 0 success, 1 parse/validation error, 2 solver failure,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from .errors import (ArityMismatch, DomainError, InvariantViolation, NotSeparable, OutOfClass,
                     OutsideROC, ParseError, ValidationError)
from .expr import evaluate
from .numeric import make_error_table, surface
from .parsing import load_problem, parse_expr
from .render import fmt_rational, render
from .solver import check_conditions, residual, solve
from .transform import forward

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_INVARIANT = 0, 1, 2, 3

GRID = np.linspace(0.2, 2.0, 10)


def _grid_max_abs(p, expr) -> float:
    gx, gy = np.meshgrid(GRID, GRID)
    return float(np.max(np.abs(evaluate(expr, gx, gy, p.eta, p.gamma))))


def _roc_json(roc):
    return {"v_gt": None if roc[0] is None else fmt_rational(roc[0]),
            "inv_w_gt": None if roc[1] is None else fmt_rational(roc[1])}


def cmd_solve(args, out) -> int:
    p = load_problem(args.file)
    sol = solve(p, max_terms=args.max_terms)
    res = residual(p, sol.assembled)
    json.dump({"name": p.name, "status": str(sol.status),
               "components": [render(c) for c in sol.components],
               "assembled": render(sol.assembled),
               "residual_max": _grid_max_abs(p, res)}, out, indent=2)
    out.write("\n")
    if not sol.status.ok:
        print(f"solver failed: {sol.status}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_transform(args, out) -> int:
    t = forward(parse_expr(args.expr))
    json.dump({"terms": [str(term) for term in t.terms], "roc": _roc_json(t.roc)}, out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    p = load_problem(args.file)
    if args.solution is not None:
        candidate = parse_expr(args.solution)
    else:
        sol = solve(p, max_terms=args.max_terms)
        if not sol.status.ok:
            print(f"solver failed: {sol.status}", file=sys.stderr)
            return EXIT_SOLVER
        candidate = sol.assembled
    res = residual(p, candidate)
    conds = check_conditions(p, candidate)
    report = {"name": p.name, "candidate": render(candidate),
              "residual": render(res), "residual_zero": res.is_zero(),
              "residual_max": _grid_max_abs(p, res), "conditions": conds}
    json.dump(report, out, indent=2)
    out.write("\n")
    return EXIT_OK if res.is_zero() and all(conds.values()) else EXIT_SOLVER


def _floats(text: str) -> list[float]:
    return [float(Fraction(s.strip())) for s in text.split(",") if s.strip()]


def _orders(text: str) -> list[tuple[float, float]]:
    out = []
    for chunk in text.split(";"):
        pair = _floats(chunk)
        if len(pair) != 2:
            raise ValidationError(f"order pair {chunk!r} must be 'eta,gamma'")
        out.append((pair[0], pair[1]))
    return out


def _g6(x: float) -> str:
    return f"{x:.6g}"


def cmd_table(args, out) -> int:
    p = load_problem(args.file)
    sol = solve(p, max_terms=args.max_terms)
    if not sol.status.ok:
        print(f"solver failed: {sol.status}", file=sys.stderr)
        return EXIT_SOLVER
    rows = make_error_table(sol.assembled, sol.assembled, _floats(args.x), _floats(args.y),
                            _orders(args.orders))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "y", "eta", "gamma", "exact", "cdlsmd", "abs_error"])
    for r in rows:
        w.writerow([_g6(v) for v in (r.x, r.y, r.eta, r.gamma, r.exact, r.cdlsmd, r.abs_error)])
    return EXIT_OK


def cmd_surface(args, out) -> int:
    p = load_problem(args.file)
    sol = solve(p, max_terms=args.max_terms)
    if not sol.status.ok:
        print(f"solver failed: {sol.status}", file=sys.stderr)
        return EXIT_SOLVER
    eta = p.eta if args.eta is None else args.eta
    gamma = p.gamma if args.gamma is None else args.gamma
    grid = surface(sol.assembled, (args.xmin, args.xmax), (args.ymin, args.ymax), args.res,
                   eta, gamma)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "y", "value"])
    for x, y, val in grid:
        w.writerow([_g6(x), _g6(y), _g6(val)])
    return EXIT_OK


def _order_arg(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lapsumudu",
                                 description="Closed-form solver for conformable fractional PDEs")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, helptext):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.add_argument("--max-terms", type=int, default=8)
        return sp

    with_file("solve", "solve a problem file and print JSON").set_defaults(func=cmd_solve)

    sp = sub.add_parser("transform", help="forward transform of an expression")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_transform)

    sp = with_file("verify", "check the residual and conditions of a solution")
    sp.add_argument("--solution", help="candidate expression (default: solve first)")
    sp.set_defaults(func=cmd_verify)

    sp = with_file("table", "error table as CSV")
    sp.add_argument("--orders", required=True, help="eta,gamma pairs separated by ';'")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.set_defaults(func=cmd_table)

    sp = with_file("surface", "solution surface as CSV")
    sp.add_argument("--eta", type=_order_arg)
    sp.add_argument("--gamma", type=_order_arg)
    sp.add_argument("--res", type=int, default=21)
    sp.add_argument("--xmin", type=float, default=0.0)
    sp.add_argument("--xmax", type=float, default=2.0)
    sp.add_argument("--ymin", type=float, default=0.0)
    sp.add_argument("--ymax", type=float, default=2.0)
    sp.set_defaults(func=cmd_surface)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which here means solver failure
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (NotSeparable, ArityMismatch) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ParseError, ValidationError, OutOfClass, DomainError, OutsideROC, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
