"""Benchmark functions, noise models and the experiment tables."""

from chebdiff.bench.functions import TestFunction, available, registry_lookup
from chebdiff.bench.noise import GaussianNoise, Noisy, SignJumpNoise
from chebdiff.bench.tables import BenchResult, emit_table, run_table1, run_table2, run_table3

__all__ = [
    "BenchResult",
    "GaussianNoise",
    "Noisy",
    "SignJumpNoise",
    "TestFunction",
    "available",
    "emit_table",
    "registry_lookup",
    "run_table1",
    "run_table2",
    "run_table3",
]
