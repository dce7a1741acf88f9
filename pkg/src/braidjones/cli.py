"""Command-line front end.

Subcommands: ``eval`` (exact invariants), ``estimate`` (simulated sampling estimators),
``compile`` (circuit to braid, with verification), ``weights`` (Markov weight table) and
``graph`` (restricted Young graph in DOT). Exit codes: 0 success, 2 parse error, 3 invalid
parameters, 4 accuracy not reached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .braid import BraidParseError, BraidWord, ClosureKind, ClosureSpec, format_braid, parse_braid
from .compiler import (
    CircuitParseError,
    CompilerConfig,
    EpsilonUnreachable,
    ExcludedRoot,
    check_root,
    compile_circuit,
    parse_circuit,
    verify_compiled,
)
from .invariants import homflypt_trace_closure, jones_closure
from .sampler import Route, estimate_homflypt, estimate_jones_closure
from .young import MarkovWeightTable, RootParams, young_graph

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_PARSE, EXIT_PARAMS, EXIT_EPS = 0, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _clean(obj):
    """Round floats to 15 significant digits and turn numpy scalars into plain Python values."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.15g}") if np.isfinite(x) else None
    return obj


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def _human_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.15g}"
    if v is None:
        return "-"
    return str(v)


def _emit(rec: dict, fmt: str, out) -> None:
    rec = _clean(rec)
    if fmt == "json":
        out.write(json.dumps(rec, indent=2) + "\n")
        return
    flat = _flatten(rec)
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(flat))
        w.writerow([_human_value(v) if isinstance(v, float) else ("" if v is None else v) for v in flat.values()])
        return
    width = max((len(k) for k in flat), default=0)
    for k, v in flat.items():
        out.write(f"{k.ljust(width)}  {_human_value(v)}\n")


def _read_braid(args) -> BraidWord:
    if args.file is not None:
        text = Path(args.file).read_bytes()
    elif args.braid is not None:
        text = args.braid
    else:
        raise _Fail(EXIT_PARSE, "no braid given (pass braid text or --file)")
    try:
        return parse_braid(text)
    except BraidParseError as exc:
        raise _Fail(EXIT_PARSE, f"braid parse error: {exc}") from None


def _framing(text: str | None, what: str) -> BraidWord | None:
    if text is None:
        return None
    try:
        return parse_braid(text)
    except BraidParseError as exc:
        raise _Fail(EXIT_PARSE, f"{what} braid parse error: {exc}") from None


def _params(k: int, l: int) -> RootParams:
    try:
        return RootParams(k, l)
    except (TypeError, ValueError) as exc:
        raise _Fail(EXIT_PARAMS, f"invalid parameters: {exc}") from None


def _spec(args, b: BraidWord) -> ClosureSpec:
    x, y = _framing(args.top, "top"), _framing(args.bottom, "bottom")
    try:
        if args.closure == "trace":
            spec = ClosureSpec(ClosureKind.TRACE, 0, b.strands, x, y)
        elif args.closure == "plat":
            spec = ClosureSpec(ClosureKind.PLAT, b.strands // 2, 0, x, y)
        else:
            if args.p is None or args.r is None:
                raise ValueError("--generalized needs --p and --r")
            spec = ClosureSpec.generalized(args.p, args.r, x, y)
        spec.validate(b.strands)
    except ValueError as exc:
        raise _Fail(EXIT_PARAMS, f"invalid closure: {exc}") from None
    if spec.kind is not ClosureKind.TRACE and args.k != 2:
        raise _Fail(EXIT_PARAMS, "plat and generalized closures need k = 2")
    return spec


def cmd_eval(args, out) -> int:
    b = _read_braid(args)
    params = _params(args.k, args.l)
    spec = _spec(args, b)
    if spec.kind is ClosureKind.TRACE:
        val = homflypt_trace_closure(spec.framed(b), params)
        val = type(val)(val.value, val.normalization, params, spec, val.wall_time)
    else:
        val = jones_closure(b, spec, params)
    rec = {"braid": format_braid(b), **val.as_record()}
    if args.format != "human":
        rec.pop("wall_time")
    _emit(rec, args.format, out)
    return EXIT_OK


def cmd_estimate(args, out) -> int:
    b = _read_braid(args)
    params = _params(args.k, args.l)
    spec = _spec(args, b)
    if args.delta <= 0:
        raise _Fail(EXIT_PARAMS, "delta must be positive")
    rng = np.random.default_rng(args.seed)
    try:
        if spec.kind is ClosureKind.TRACE:
            run = estimate_homflypt(spec.framed(b), params, args.delta, rng, M=args.samples,
                                    fast=args.fast, seed=args.seed)
            rec = {"braid": format_braid(b), **run.as_record()}
        else:
            routes = [Route.VIA_PLAT, Route.DIRECT] if args.route == "both" else [Route(args.route)]
            runs = [estimate_jones_closure(b, spec, params.l, args.delta, rng, route=r, M=args.samples,
                                           fast=args.fast, seed=args.seed) for r in routes]
            if len(runs) == 1:
                rec = {"braid": format_braid(b), **runs[0].as_record()}
            else:
                rec = {"braid": format_braid(b), "plat": runs[0].as_record(), "direct": runs[1].as_record(),
                       "route_gap": abs(runs[0].estimate - runs[1].estimate)}
    except ValueError as exc:
        raise _Fail(EXIT_PARAMS, f"invalid parameters: {exc}") from None
    _emit(rec, args.format, out)
    return EXIT_OK


def cmd_compile(args, out) -> int:
    try:
        check_root(args.l)
    except ExcludedRoot as exc:
        raise _Fail(EXIT_PARAMS, str(exc)) from None
    if args.eps <= 0:
        raise _Fail(EXIT_PARAMS, "eps must be positive")
    src = sys.stdin.read() if args.circuit == "-" else Path(args.circuit).read_text()
    try:
        circuit = parse_circuit(src)
    except CircuitParseError as exc:
        raise _Fail(EXIT_PARSE, f"circuit parse error: {exc}") from None
    config = CompilerConfig(sk_net_depth=args.sk_net_depth, sk_depth=args.sk_depth, max_rounds=args.max_rounds)
    try:
        cb = compile_circuit(circuit, args.l, args.eps, config)
    except EpsilonUnreachable as exc:
        rec = {"success": False, "eps_target": args.eps, "best_distance": exc.best_distance, "error": str(exc)}
        _emit(rec, args.format, out)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_EPS
    text = format_braid(cb.braid)
    rec = cb.as_record()
    if args.format != "human":
        rec.pop("wall_time")
    if circuit.n <= 3:
        rec["verification"] = verify_compiled(cb, circuit).as_record()
    if args.out is not None:
        Path(args.out).write_text(text + "\n")
        rec["braid_file"] = str(args.out)
    else:
        rec["braid"] = text
    _emit(rec, args.format, out)
    return EXIT_OK if cb.success else EXIT_EPS


def cmd_weights(args, out) -> int:
    params = _params(args.k, args.l)
    if args.n < 0:
        raise _Fail(EXIT_PARAMS, "n must be nonnegative")
    table = MarkovWeightTable(args.n, params)
    if args.format == "json":
        rows = [{"lambda": str(lam), "dim": e.dim, "weight": e.weight, "probability": e.probability}
                for lam, e in table.entries.items()]
        out.write(json.dumps(_clean({"n": args.n, "k": args.k, "l": args.l, "total": table.total,
                                     "entries": rows}), indent=2) + "\n")
    else:
        out.write(table.to_csv())
    return EXIT_OK


def cmd_graph(args, out) -> int:
    params = _params(args.k, args.l)
    if args.n < 0:
        raise _Fail(EXIT_PARAMS, "n must be nonnegative")
    dot = young_graph(args.n, params).to_dot()
    if args.format == "json":
        out.write(json.dumps({"n": args.n, "k": args.k, "l": args.l, "dot": dot}, indent=2) + "\n")
    else:
        out.write(dot if dot.endswith("\n") else dot + "\n")
    return EXIT_OK


def _closure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("braid", nargs="?", help='braid text, e.g. "n:4; word: 2 -3 2"')
    p.add_argument("-f", "--file", help="read the braid text from a file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--trace", dest="closure", action="store_const", const="trace")
    g.add_argument("--plat", dest="closure", action="store_const", const="plat")
    g.add_argument("--generalized", dest="closure", action="store_const", const="generalized")
    p.set_defaults(closure="trace")
    p.add_argument("--p", type=int, help="cap pairs of a generalized closure")
    p.add_argument("--r", type=int, help="through strands of a generalized closure")
    p.add_argument("--top", help="framing braid x placed above b")
    p.add_argument("--bottom", help="framing braid y placed below b")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidjones", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="exact HOMFLYPT/Jones value of a closure")
    _closure_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("estimate", parents=[common], help="simulated additive estimate of a closure")
    _closure_args(p)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, help="sample count (at least the automatic bound)")
    p.add_argument("--route", choices=["plat", "direct", "both"], default="plat")
    p.add_argument("--fast", action="store_true", help="draw outcomes as Bernoulli variables")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("compile", parents=[common], help="compile a qubit circuit into a braid")
    p.add_argument("circuit", help="circuit file, or - for standard input")
    p.add_argument("--l", type=int, default=5)
    p.add_argument("--eps", type=float, default=0.3)
    p.add_argument("-o", "--out", help="write the braid text here")
    p.add_argument("--sk-net-depth", type=int, default=CompilerConfig.sk_net_depth)
    p.add_argument("--sk-depth", type=int, default=CompilerConfig.sk_depth)
    p.add_argument("--max-rounds", type=int, default=CompilerConfig.max_rounds)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("weights", parents=[common], help="Markov weight table (CSV unless json)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=5)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("graph", parents=[common], help="restricted Young graph in DOT")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=5)
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _Fail as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
