"""Command line entry point: ``chebdiff derive|bench|optimize``.

Exit codes: 0 success, 2 bad arguments, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from chebdiff.bench.functions import available, registry_lookup
from chebdiff.bench.tables import emit_table, make_oracle, run_table1, run_table2, run_table3
from chebdiff.cheb_core import Window
from chebdiff.errors import ChebDiffError
from chebdiff.local_diff import DiffConfig, KinkSet, derivative_at
from chebdiff.optim import DescentParams, Termination, steepest_descent

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _window_json(w) -> dict | list:
    if isinstance(w, Window):
        return {"lo": w.lo, "hi": w.hi, "nodes": w.node_count}
    return [_window_json(v) for v in w]


def cmd_derive(args: argparse.Namespace) -> int:
    fn = registry_lookup(args.fn, seed=args.seed)
    if fn.arity != 1:
        raise UsageError(f"derive needs a one-dimensional function; {args.fn} has arity {fn.arity}")
    kinks = fn.kinks or KinkSet.empty()
    if args.kinks is not None:
        kinks = KinkSet(tuple(args.kinks), kinks.domain_lo, kinks.domain_hi)
    try:
        cfg = DiffConfig(h=args.h, node_count=args.nodes, mode=args.mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    est = derivative_at(fn.evaluator, args.x, cfg, kinks)
    out = {
        "function": fn.name,
        "x": args.x,
        "kind": est.kind.value,
        "value": est.value,
        "left": est.left,
        "right": est.right,
        "window": _window_json(est.window_used),
        "shrinks": est.shrinks_performed,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.table == "table1":
        result = run_table1()
    elif args.table == "table2":
        result = run_table2(
            noise_amplitude=args.noise_amp if args.noise_amp is not None else 1e-10,
            samples=args.samples,
            seed=args.seed,
        )
    else:
        result = run_table3(seed=args.seed)
    text = emit_table(result, args.out)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    if not args.fn.startswith("rosenbrock"):
        raise UsageError("optimize supports rosenbrock, rosenbrock-delta, rosenbrock-jump")
    fn = registry_lookup(args.fn, seed=args.seed)
    try:
        if args.method == "fd":
            oracle = make_oracle("fd", fd_h=args.h if args.h is not None else 1e-6)
        elif args.method == "chebyshev":
            oracle = make_oracle(
                "chebyshev", cheb_h=args.h if args.h is not None else 1e-4, nodes=args.nodes
            )
        else:
            oracle = make_oracle("exact")
        params = DescentParams(grad_tol=args.grad_tol, max_iterations=args.max_iter)
    except ValueError as exc:
        raise UsageError(str(exc))
    if len(args.x0) != 2:
        raise UsageError("--x0 needs two comma-separated values")
    fn.reseed(args.seed, ())
    trace = steepest_descent(fn.evaluator, oracle, np.asarray(args.x0), params)
    last = trace.iterates[-1]
    print(
        json.dumps(
            {
                "function": fn.name,
                "method": args.method,
                "termination": trace.termination.value,
                "iterations": trace.iteration_count,
                "final_point": [round(v, 6) for v in trace.final_point.tolist()],
                "final_value": last.value,
                "grad_norm": last.grad_norm,
            },
            indent=2,
        )
    )
    if trace.termination is Termination.LINE_SEARCH_FAILED:
        print(f"error: {trace.error}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebdiff",
        description="Local Chebyshev differentiation of black-box functions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derivative of a registered 1-D function at a point")
    p.add_argument("--fn", required=True, choices=available())
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--nodes", type=int, default=5)
    p.add_argument("--mode", choices=["classical", "subgradient", "weak"], default="classical")
    p.add_argument("--kinks", type=_floats, default=None, help="override kink set, e.g. 0,0.5")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("bench", help="reproduce one of the experiment tables")
    p.add_argument("table", choices=["table1", "table2", "table3"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--noise-amp", type=float, default=None)
    p.add_argument("--out", choices=["csv", "markdown"], default="csv")
    p.add_argument("--output", default=None, help="write to PATH instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("optimize", help="steepest descent on a Rosenbrock variant")
    p.add_argument(
        "--fn", required=True, choices=["rosenbrock", "rosenbrock-delta", "rosenbrock-jump"]
    )
    p.add_argument("--method", required=True, choices=["exact", "fd", "chebyshev"])
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--nodes", type=int, default=5)
    p.add_argument("--x0", type=_floats, default=[-1.2, 1.0])
    p.add_argument("--grad-tol", type=float, default=1e-3)
    p.add_argument("--max-iter", type=int, default=19999)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"chebdiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChebDiffError as exc:
        print(f"chebdiff: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"chebdiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
