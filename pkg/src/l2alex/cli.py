"""Command-line front end.

Input is a single JSON document (exponent-vector form, no expression
parser); outputs are JSON objects/arrays or CSV with header "t,value". All
floats are rendered with a fixed %.12g format and reductions run in a fixed
order, so identical invocations produce byte-identical output.

Exit codes: 0 success, 1 input error, 2 numeric-budget error, 3 tie or
degeneracy error.

``L2ALEX_THREADS`` caps the number of worker threads used for grid sweeps
(0 or unset = auto).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .degree import det_function, convexity_check
from .errors import (ChiefPartTieError, DegenerateSliceError, InputError,
                     L2AlexError, QuadratureBudgetError, ZeroMatrixError,
                     ZeroPolynomialError)
from .laurent import LaurentMatrix
from .mahler import mahler_mv_report
from .quadrature import DEFAULT_NODE_BUDGET, geometric_grid
from .torsion3m import (TorsionSpec, torsion_degree, torsion_from_presentation,
                        triple_figure_eight, triple_figure_eight_torsion)
from .twist import CohomClass

_EXIT_OK = 0
_EXIT_INPUT = 1
_EXIT_BUDGET = 2
_EXIT_DEGENERATE = 3


@dataclass
class InputDocument:
    variables: list
    matrix: LaurentMatrix
    cohom: CohomClass
    pairs: tuple
    index_divisor: int


def parse_input(text: str) -> InputDocument:
    """Parse and validate a JSON input document before any computation."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed-json",
                         f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(obj, dict):
        raise InputError("malformed-json", "top-level value must be an object")

    variables = obj.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError("bad-variables", '"variables" must be a list of names')
    nvars = len(variables)

    if "matrix" not in obj or "class" not in obj:
        raise InputError("missing-field", 'both "matrix" and "class" are required')
    try:
        matrix = LaurentMatrix.from_obj(nvars, obj["matrix"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad-matrix", f"matrix does not parse: {exc}")
    except L2AlexError as exc:
        raise InputError("dimension-mismatch", str(exc))

    cls = obj["class"]
    if not isinstance(cls, dict) or "sigma" not in cls:
        raise InputError("bad-class", '"class" must be an object with "sigma"')
    try:
        cohom = CohomClass.from_obj(cls)
    except (TypeError, ValueError) as exc:
        raise InputError("bad-class", f"class does not parse: {exc}")
    if cohom.nvars != nvars:
        raise InputError(
            "dimension-mismatch",
            f"sigma has length {cohom.nvars}, document declares {nvars} variables")

    pairs = obj.get("pairs", [])
    if not isinstance(pairs, list):
        raise InputError("bad-pairs", '"pairs" must be a list of [a, b] pairs')
    done = []
    for item in pairs:
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not all(isinstance(x, (int, float)) for x in item)):
            raise InputError("bad-pairs", f"pair {item!r} is not [a, b]")
        done.append((float(item[0]), float(item[1])))

    index = obj.get("index_divisor", 1)
    if not isinstance(index, int) or index < 1:
        raise InputError("bad-index-divisor",
                         f"index_divisor must be a positive integer, got {index!r}")
    return InputDocument(variables, matrix, cohom, tuple(done), index)


def serialize_input(doc: InputDocument) -> str:
    """Full-precision document serialization (round-trips exactly).

    Computed outputs use render_json's %.12g; documents keep every bit.
    """
    obj = {
        "variables": list(doc.variables),
        "matrix": doc.matrix.to_obj(),
        "class": doc.cohom.to_obj(),
    }
    if doc.pairs:
        obj["pairs"] = [list(p) for p in doc.pairs]
    if doc.index_divisor != 1:
        obj["index_divisor"] = doc.index_divisor
    return json.dumps(obj)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.12g" % x


def render_json(obj) -> str:
    """Deterministic JSON with %.12g floats, keys in insertion order."""
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(k)}:{render_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(render_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _parse_grid(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError("bad-grid", f'grid "{spec}" is not of the form lo:hi:n')
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        return geometric_grid(lo, hi, n)
    except ValueError as exc:
        raise InputError("bad-grid", f'grid "{spec}": {exc}')


def _read_input(path: str) -> InputDocument:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError("unreadable-input", str(exc))
    return parse_input(text)


def _workers() -> int:
    raw = os.environ.get("L2ALEX_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def _map_grid(fn, grid):
    workers = _workers()
    if workers == 1 or len(grid) < 4:
        return [fn(t) for t in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, grid))


def _cmd_mahler(args, out):
    doc = _read_input(args.input)
    poly = doc.matrix.determinant()
    result = mahler_mv_report(poly, tol=args.tol, max_evals=args.max_evals)
    out.write(render_json({"measure": result.measure,
                           "log_measure": result.log_measure,
                           "achieved_tol": result.achieved_tol}) + "\n")


def _cmd_eval(args, out):
    doc = _read_input(args.input)
    grid = _parse_grid(args.t_grid)
    fn = det_function(doc.matrix, doc.cohom, index_divisor=doc.index_divisor)
    values = _map_grid(lambda t: fn.eval(t, args.tol), grid)
    out.write("t,value\n")
    for t, v in zip(grid, values):
        out.write("%.12g,%.12g\n" % (t, v))


def _cmd_degree(args, out):
    doc = _read_input(args.input)
    fn = det_function(doc.matrix, doc.cohom, index_divisor=doc.index_divisor)
    out.write(render_json(fn.asymptote(args.tol).to_obj()) + "\n")


def _cmd_convexity(args, out):
    doc = _read_input(args.input)
    grid = _parse_grid(args.grid)
    fn = det_function(doc.matrix, doc.cohom, index_divisor=doc.index_divisor)
    report = convexity_check(fn, grid, tol=args.tol)
    obj = {
        "passed": report.passed,
        "zero_function": report.zero_function,
        "slope_min": report.slope_min,
        "slope_max": report.slope_max,
        "slope_range": report.slope_range,
        "slope_bound": report.slope_bound,
        "violations": [
            {"t_lo": a, "t_mid": m, "t_hi": b, "excess": e}
            for a, m, b, e in report.violations],
        "slope_violations": [
            {"pair_min": list(pmin), "pair_max": list(pmax), "range": r}
            for pmin, pmax, r in report.slope_violations],
    }
    out.write(render_json(obj) + "\n")


def _cmd_torsion(args, out):
    doc = _read_input(args.input)
    grid = _parse_grid(args.t_grid)
    spec = TorsionSpec(doc.matrix, doc.cohom, doc.pairs, doc.index_divisor)
    tau = torsion_from_presentation(spec)
    values = _map_grid(lambda t: tau.value(t, args.tol), grid)
    out.write("t,value\n")
    for t, v in zip(grid, values):
        out.write("%.12g,%.12g\n" % (t, v))


def _scenario_row(phi) -> dict:
    data = triple_figure_eight(phi)
    report = torsion_degree(triple_figure_eight_torsion(phi))
    return {"phi": list(phi), "norm": data["norm"], "delta": data["delta"],
            "leading": data["leading"], "deg_b": report.deg_b}


def _cmd_scenario(args, out):
    if args.name != "section9":
        raise InputError("unknown-scenario", f"unknown scenario {args.name!r}")
    if args.phi is None and args.sweep is None:
        raise InputError("missing-field", "need --phi a,b,c and/or --sweep n")

    rows = []
    if args.phi is not None:
        parts = args.phi.split(",")
        if len(parts) != 3:
            raise InputError("bad-phi", f'--phi "{args.phi}" is not a,b,c')
        try:
            phi = tuple(float(p) for p in parts)
        except ValueError:
            raise InputError("bad-phi", f'--phi "{args.phi}" is not numeric')
        try:
            rows.append(_scenario_row(phi))
        except ValueError as exc:
            raise InputError("bad-phi", str(exc))

    if args.sweep is not None:
        if args.sweep < 1:
            raise InputError("bad-sweep", "--sweep must be >= 1")
        u = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
        w = (1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6))
        for k in range(args.sweep):
            ang = 2.0 * math.pi * k / args.sweep
            phi = tuple(math.cos(ang) * ui + math.sin(ang) * wi
                        for ui, wi in zip(u, w))
            phi = tuple(0.0 if abs(x) < 1e-12 else x for x in phi)
            phi = (phi[0], phi[1], -phi[0] - phi[1])
            rows.append(_scenario_row(phi))

    payload = rows[0] if (args.phi is not None and args.sweep is None) else rows
    out.write(render_json(payload) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2alex",
        description="Determinant functions, Mahler measures, and "
                    "L2-Alexander torsion of 3-manifold presentations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mahler", help="Mahler measure of the determinant polynomial")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-evals", type=int, default=DEFAULT_NODE_BUDGET,
                   help="quadrature node budget before giving up")
    p.set_defaults(run=_cmd_mahler)

    p = sub.add_parser("eval", help="sample V(t) on a geometric grid (CSV)")
    p.add_argument("--input", required=True)
    p.add_argument("--t-grid", required=True, metavar="lo:hi:n")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("degree", help="asymptote report of V")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(run=_cmd_degree)

    p = sub.add_parser("convexity", help="multiplicative convexity check on a grid")
    p.add_argument("--input", required=True)
    p.add_argument("--grid", required=True, metavar="lo:hi:n")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(run=_cmd_convexity)

    p = sub.add_parser("torsion", help="sample the torsion function (CSV)")
    p.add_argument("--input", required=True)
    p.add_argument("--t-grid", required=True, metavar="lo:hi:n")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(run=_cmd_torsion)

    p = sub.add_parser("scenario", help="closed-form landscape tables")
    p.add_argument("name", choices=["section9"])
    p.add_argument("--phi", default=None, metavar="a,b,c")
    p.add_argument("--sweep", type=int, default=None, metavar="n")
    p.set_defaults(run=_cmd_scenario)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_INPUT if exc.code not in (0, None) else _EXIT_OK
    try:
        args.run(args, sys.stdout)
        return _EXIT_OK
    except InputError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except QuadratureBudgetError as exc:
        print(f"error[quadrature-budget]: {exc} "
              f"(best estimate {exc.best_estimate!r}, "
              f"achieved {exc.achieved_tol!r})", file=sys.stderr)
        return _EXIT_BUDGET
    except (ChiefPartTieError, DegenerateSliceError, ZeroMatrixError,
            ZeroPolynomialError) as exc:
        print(f"error[degeneracy]: {exc}", file=sys.stderr)
        return _EXIT_DEGENERATE
    except L2AlexError as exc:
        print(f"error[input]: {exc}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
