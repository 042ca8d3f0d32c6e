"""Experiment runners for the three benchmark tables, plus CSV/markdown output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from chebdiff.bench.functions import (
    TABLE2_NOISE,
    f1,
    f1_prime,
    make_f2,
    registry_lookup,
    rosenbrock_grad,
)
from chebdiff.errors import ChebDiffError
from chebdiff.local_diff import DiffConfig, KinkSet, central_difference, derivative_at
from chebdiff.optim import (
    DescentParams,
    ExactGradient,
    FiniteDifferenceGradient,
    LocalChebyshevGradient,
    steepest_descent,
)

__all__ = [
    "BenchResult",
    "TABLE1_H",
    "TABLE2_H",
    "TABLE3_ROWS",
    "emit_table",
    "make_oracle",
    "run_table1",
    "run_table2",
    "run_table3",
]

TABLE1_X = (0.5, 0.0)
TABLE1_H = (1e-3, 1e-4, 1e-5)
TABLE2_H = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
TABLE2_X = 0.5

VARIANTS = ("clean", "delta", "jump")
METHODS = ("exact", "fd", "chebyshev")
VARIANT_FN = {"clean": "rosenbrock", "delta": "rosenbrock-delta", "jump": "rosenbrock-jump"}
VARIANT_LABEL = {"clean": "R_{a,b}", "delta": "R_{a,b}+delta", "jump": "R_{a,b}+epsilon"}
TABLE3_ROWS = (
    ("clean", "exact"),
    ("clean", "fd"),
    ("clean", "chebyshev"),
    ("delta", "fd"),
    ("delta", "chebyshev"),
    ("jump", "fd"),
    ("jump", "chebyshev"),
)
DEFAULT_X0 = (-1.2, 1.0)
FD_STEP = 1e-6
CHEB_STEP = 1e-4
CHEB_NODES = 5


@dataclass
class BenchResult:
    title: str
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)


def _column(order: int) -> str:
    return f"C{order}"


def _guarded(fn, *args) -> float | str:
    try:
        return fn(*args)
    except ChebDiffError as exc:
        return f"error:{type(exc).__name__}"


def run_table1(
    h_list: Sequence[float] = TABLE1_H,
    x_list: Sequence[float] = TABLE1_X,
    orders: Sequence[int] = (3, 5),
) -> BenchResult:
    """Absolute derivative errors for f1: central difference vs C_N on [x-h, x+h]."""
    # centred windows throughout, including x = 0; f1 is C^3 there
    kinks = KinkSet.empty(-1.0, 1.0)
    result = BenchResult(
        "Errors for f1",
        ["x", "h", "f_h"] + [_column(n) for n in orders],
        metadata={"function": "f1", "orders": list(orders)},
    )
    for x in x_list:
        exact = f1_prime(x)
        for h in h_list:
            row: dict[str, Any] = {"x": x, "h": h}
            row["f_h"] = _guarded(lambda: abs(central_difference(f1, x, h) - exact))
            for n in orders:
                cfg = DiffConfig(h=h, node_count=n)
                row[_column(n)] = _guarded(
                    lambda: abs(derivative_at(f1, x, cfg, kinks).value - exact)
                )
            result.rows.append(row)
    return result


def run_table2(
    h_list: Sequence[float] = TABLE2_H,
    orders: Sequence[int] = (3, 5, 7),
    noise_amplitude: float = TABLE2_NOISE,
    samples: int = 100,
    seed: int = 0,
    x: float = TABLE2_X,
) -> BenchResult:
    """Worst absolute derivative error of noisy f2 over ``samples`` noise draws.

    Each (row, column, sample) triple owns its own noise substream, so any
    cell can be recomputed in isolation.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    kinks = KinkSet((0.0,), -1.0, 1.0)
    exact = f1_prime(x)
    columns = ["f_h"] + [_column(n) for n in orders]
    result = BenchResult(
        "Errors for f2",
        ["x", "h"] + columns,
        metadata={
            "function": "f2",
            "noise_amplitude": noise_amplitude,
            "samples": samples,
            "seed": seed,
            "statistic": "max",
            "rng": f"numpy Philox4x64-10 / SeedSequence (numpy {np.__version__})",
        },
    )
    for r, h in enumerate(h_list):
        row: dict[str, Any] = {"x": x, "h": h}
        for c, col in enumerate(columns):
            worst = 0.0
            for s in range(samples):
                f2 = make_f2(noise_amplitude, seed, key=(r, c, s)).evaluator
                try:
                    if col == "f_h":
                        est = central_difference(f2, x, h)
                    else:
                        est = derivative_at(f2, x, DiffConfig(h=h, node_count=orders[c - 1]), kinks).value
                except ChebDiffError as exc:
                    worst = f"error:{type(exc).__name__}"
                    break
                worst = max(worst, abs(est - exact))
            row[col] = worst
        result.rows.append(row)
    return result


def make_oracle(method: str, fd_h: float = FD_STEP, cheb_h: float = CHEB_STEP, nodes: int = CHEB_NODES):
    if method == "exact":
        return ExactGradient(rosenbrock_grad)
    if method == "fd":
        return FiniteDifferenceGradient(fd_h)
    if method == "chebyshev":
        return LocalChebyshevGradient(DiffConfig(h=cheb_h, node_count=nodes))
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def _fmt_point(p) -> str:
    return "(" + ", ".join(f"{v:.3f}" for v in p) + ")"


def run_table3(
    variants: Iterable[str] | None = None,
    methods: Iterable[str] | None = None,
    params: DescentParams | None = None,
    seed: int = 0,
    x0: Sequence[float] = DEFAULT_X0,
    fd_h: float = FD_STEP,
    cheb_h: float = CHEB_STEP,
    nodes: int = CHEB_NODES,
) -> BenchResult:
    """Steepest descent on the Rosenbrock variants with each gradient oracle.

    With neither ``variants`` nor ``methods`` given, the seven rows in
    ``TABLE3_ROWS`` are run. Otherwise every (variant, method) combination
    is. Noise streams are keyed by the (variant, method) pair, not by row
    position.
    """
    params = params or DescentParams()
    if variants is None and methods is None:
        grid = list(TABLE3_ROWS)
    else:
        vs = list(variants or VARIANTS)
        ms = list(methods or METHODS)
        for v in vs:
            if v not in VARIANTS:
                raise ValueError(f"unknown variant {v!r}; choose from {', '.join(VARIANTS)}")
        grid = [(v, m) for v in vs for m in ms]

    result = BenchResult(
        "Iteration numbers for optimization",
        ["function", "method", "iterations", "termination", "result", "distance"],
        metadata={
            "seed": seed,
            "x0": list(x0),
            "params": vars(params).copy(),
            "fd_h": fd_h,
            "cheb_h": cheb_h,
            "nodes": nodes,
        },
    )
    for variant, method in grid:
        oracle = make_oracle(method, fd_h, cheb_h, nodes)
        fn = registry_lookup(VARIANT_FN[variant], seed=seed)
        fn.reseed(seed, (VARIANTS.index(variant), METHODS.index(method)))
        row: dict[str, Any] = {"function": VARIANT_LABEL[variant], "method": method}
        try:
            trace = steepest_descent(fn.evaluator, oracle, x0, params)
        except ChebDiffError as exc:
            trace = exc.trace
            row["termination"] = f"error:{type(exc).__name__}"
        else:
            row["termination"] = trace.termination.value
        row["iterations"] = trace.iteration_count
        row["result"] = _fmt_point(trace.final_point)
        row["distance"] = float(np.linalg.norm(trace.final_point - np.ones(2)))
        result.rows.append(row)
    return result


def _fmt_cell(v: Any) -> str:
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return f"{v:.3e}" if math.isfinite(v) else str(v)
    return str(v)


def emit_table(result: BenchResult, fmt: str = "csv") -> str:
    """Render as CSV (header row, LF endings) or a markdown pipe table."""
    cells = [[_fmt_cell(row.get(c, "")) for c in result.columns] for row in result.rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.columns)
        writer.writerows(cells)
        return buf.getvalue()
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(result.columns) + " |",
            "|" + "|".join("---" for _ in result.columns) + "|",
        ]
        lines += ["| " + " | ".join(r) + " |" for r in cells]
        lines.append("")
        lines.append(f"Table: {result.title}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")
