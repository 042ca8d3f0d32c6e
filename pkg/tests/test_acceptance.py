"""Acceptance checks for the headline numerical claims.

Each test prints one PASS/FAIL line (collected again in the terminal summary)
and asserts its tolerance. Table 1 cells are compared with the two-digit
reference figures in ``TABLE1_REFERENCE``; everything else is checked against
an independent oracle computed here.
"""

from __future__ import annotations

import math
import shutil
import subprocess
import sys
import time

import numpy as np
import pytest
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P

from chebdiff.bench.functions import rosenbrock, rosenbrock_grad
from chebdiff.bench.tables import run_table1, run_table2, run_table3
from chebdiff.cheb_core import Window, differentiate, evaluate, exact_series_coefficients, interpolate
from chebdiff.local_diff import DiffConfig, KinkSet, central_difference, derivative_at
from chebdiff.multi_grad import gradient

# (x, h) -> (f_h, C3, C5) reference absolute errors for f1 (two digits)
TABLE1_REFERENCE = {
    (0.5, 1e-3): (2e-6, 2e-6, 2e-14),
    (0.5, 1e-4): (1.9e-8, 1.9e-8, 2.6e-13),
    (0.5, 1e-5): (1.9e-10, 1.9e-10, 1.8e-12),
    (0.0, 1e-3): (5e-10, 5e-10, 1.4e-10),
    (0.0, 1e-4): (5e-13, 5e-13, 2.6e-13),
    (0.0, 1e-5): (5e-16, 5e-16, 1.5e-16),
}


def series(a):
    """Callable for a_0/2 + sum a_n T_n, evaluated by numpy (independent of chebdiff)."""
    c = np.array(a, dtype=float)
    c[0] *= 0.5
    return lambda x: float(C.chebval(x, c))


def aliasing_sum(a, k, n):
    """a_k + sum_{j>=1} (a_{k+2jn} + a_{2jn-k}); the b_n entry counts its terms twice."""
    K = len(a) - 1
    total = a[k]
    j = 1
    while 2 * j * n - k <= K:
        for idx in (k + 2 * j * n, 2 * j * n - k):
            if idx <= K:
                total += a[idx]
        j += 1
    return total / 2 if k == n else total


# ----------------------------------------------------------------------
# Table 1
# ----------------------------------------------------------------------


def test_table1_cells_within_factor_two(acceptance):
    start = time.perf_counter()
    result = run_table1()
    elapsed = time.perf_counter() - start
    worst = (1.0, None)
    for row in result.rows:
        ref = TABLE1_REFERENCE[(row["x"], row["h"])]
        for col, expected in zip(("f_h", "C3", "C5"), ref):
            ratio = row[col] / expected
            if abs(math.log(ratio)) > abs(math.log(worst[0])):
                worst = (ratio, (row["x"], row["h"], col))
    ok = 0.5 <= worst[0] <= 2.0 and elapsed < 1.0
    acceptance.check(
        "Table 1 factor-of-two",
        ok,
        f"worst ratio {worst[0]:.3f} at {worst[1]}, {elapsed:.2f}s",
    )


def test_table1_central_difference_equals_c3(acceptance):
    result = run_table1()
    rel = max(abs(r["f_h"] - r["C3"]) / abs(r["f_h"]) for r in result.rows)
    acceptance.check("Table 1 f_h == C3", rel <= 1e-12, f"max relative gap {rel:.2e}")


# ----------------------------------------------------------------------
# Three-point identity
# ----------------------------------------------------------------------


def test_three_point_identity(acceptance):
    rng = np.random.default_rng(2024)
    families = [
        lambda a, b: (lambda x: math.sin(a * x + b)),
        lambda a, b: (lambda x: math.exp(a * x) - b),
        lambda a, b: (lambda x: a * x**5 - b * x**2 + x),
        lambda a, b: (lambda x: math.log1p((a * x) ** 2) + b),
        lambda a, b: (lambda x: abs(x - b) * a),
        lambda a, b: (lambda x: math.atan(a * x) * math.cosh(b * x)),
    ]
    worst = 0.0
    for i in range(1000):
        a, b = rng.uniform(-3, 3, 2)
        f = families[i % len(families)](a, b)
        x = rng.uniform(-10, 10)
        h = 10 ** rng.uniform(-8, 0)
        cheb = derivative_at(f, x, DiffConfig(h=h, node_count=3)).value
        cd = central_difference(f, x, h)
        gap = abs(cheb - cd)
        rel = gap / abs(cd) if cd else (0.0 if gap == 0 else math.inf)
        worst = max(worst, rel)
    acceptance.check("Three-point identity", worst <= 1e-13, f"1000 cases, max relative gap {worst:.2e}")


# ----------------------------------------------------------------------
# Aliasing identity
# ----------------------------------------------------------------------


def test_aliasing_identity(acceptance):
    rng = np.random.default_rng(7)
    worst = 0.0
    oracle_gap = 0.0
    for case in range(50):
        N = 4 + case % 6
        n = N - 1
        K = 3 * N - 1
        a = rng.uniform(-1, 1, K + 1)
        f = series(a)
        # the quadrature oracle must recover the known coefficients
        oracle = exact_series_coefficients(f, K)
        oracle_gap = max(oracle_gap, float(np.abs(oracle.values - a).max()))
        b = interpolate(f, Window(-1.0, 1.0, N)).coeffs
        expected = np.array([aliasing_sum(a, k, n) for k in range(N)])
        worst = max(worst, float(np.abs(b - expected).max()))
    ok = worst <= 1e-10 and oracle_gap <= 1e-10
    acceptance.check(
        "Aliasing identity",
        ok,
        f"50 series, N=4..9, max |b_k - sum| {worst:.2e}, oracle gap {oracle_gap:.2e}",
    )


# ----------------------------------------------------------------------
# Polynomial and derivative exactness
# ----------------------------------------------------------------------


def test_polynomial_and_derivative_exactness(acceptance):
    rng = np.random.default_rng(99)
    worst_val = worst_der = 0.0
    for _ in range(1000):
        N = int(rng.integers(2, 13))
        deg = int(rng.integers(0, N))
        lo = rng.uniform(-10, 10)
        hi = lo + 10 ** rng.uniform(-3, 1)
        mid, rad = 0.5 * (lo + hi), 0.5 * (hi - lo)
        c = rng.uniform(-1, 1, deg + 1)
        q = lambda x: float(P.polyval((x - mid) / rad, c))
        dc = P.polyder(c)
        p = interpolate(q, Window(lo, hi, N))
        x = rng.uniform(lo, hi, 100)
        scale = np.abs(c).sum()
        dscale = max(float(np.abs(dc).sum()) if dc.size else 0.0, scale) / rad
        val_err = np.abs(evaluate(p, x) - [q(v) for v in x]).max() / scale
        der_err = np.abs(evaluate(differentiate(p), x) - P.polyval((x - mid) / rad, dc) / rad).max() / dscale
        worst_val = max(worst_val, val_err)
        worst_der = max(worst_der, der_err)
    ok = worst_val <= 1e-10 and worst_der <= 1e-10
    acceptance.check(
        "Polynomial + derivative exactness",
        ok,
        f"1000 polynomials, scaled errors value {worst_val:.2e}, derivative {worst_der:.2e}",
    )


# ----------------------------------------------------------------------
# Factor-of-two bound
# ----------------------------------------------------------------------


def test_factor_two_bound_for_exp(acceptance):
    a = exact_series_coefficients(math.exp, 60).values
    probes = np.linspace(-1, 1, 1001)
    exact = np.exp(probes)
    margins = []
    for N in range(4, 13):
        p = interpolate(math.exp, Window(-1.0, 1.0, N))
        err = float(np.abs(evaluate(p, probes) - exact).max())
        bound = 2 * float(np.abs(a[N:]).sum()) + 1e-12
        margins.append((N, err, bound))
    ok = all(err <= bound for _, err, bound in margins)
    tightest = max(margins, key=lambda m: m[1] / m[2])
    acceptance.check(
        "Factor-of-two bound (exp)",
        ok,
        f"N=4..12, tightest N={tightest[0]}: error {tightest[1]:.2e} <= bound {tightest[2]:.2e}",
    )


# ----------------------------------------------------------------------
# Table 2
# ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def table2():
    start = time.perf_counter()
    result = run_table2(noise_amplitude=1e-10, samples=100, seed=0)
    return result, time.perf_counter() - start


def test_table2_properties(acceptance, table2):
    result, elapsed = table2
    rows = {r["h"]: r for r in result.rows}
    fh = rows[1e-1]["f_h"]
    c5 = rows[1e-1]["C5"]
    c7_small, c7_mid = rows[1e-6]["C7"], rows[1e-2]["C7"]
    checks = [
        ("(i)", 1e-2 <= fh <= 4e-2, f"f_h at h=1e-1 is {fh:.2e}"),
        ("(ii)", c5 < 1e-6, f"C5 at h=1e-1 is {c5:.2e}"),
        ("(iii)", c7_small > c7_mid, f"C7 at h=1e-6 {c7_small:.2e} > at h=1e-2 {c7_mid:.2e}"),
        ("runtime", elapsed < 5.0, f"{elapsed:.2f}s"),
    ]
    ok = all(c[1] for c in checks)
    acceptance.check(
        "Table 2 properties",
        ok,
        "; ".join(f"{name} {'ok' if good else 'FAILED'}: {msg}" for name, good, msg in checks),
    )


# ----------------------------------------------------------------------
# Table 3
# ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def table3():
    start = time.perf_counter()
    result = run_table3(seed=0)
    elapsed = time.perf_counter() - start
    rows = {}
    for row in result.rows:
        variant = {"R_{a,b}": "clean", "R_{a,b}+delta": "delta", "R_{a,b}+epsilon": "jump"}[row["function"]]
        rows[(variant, row["method"])] = row
    return rows, elapsed


def _row_summary(row):
    return f"{row['termination']} after {row['iterations']} at {row['result']}, d={row['distance']:.2e}"


def test_table3_clean_all_converge(acceptance, table3):
    rows, _ = table3
    sub = [rows[("clean", m)] for m in ("exact", "fd", "chebyshev")]
    ok = all(r["termination"] == "Converged" and r["distance"] <= 5e-3 for r in sub)
    acceptance.check(
        "Table 3 (i) clean converges",
        ok,
        "; ".join(f"{r['method']}: {_row_summary(r)}" for r in sub),
    )


@pytest.mark.parametrize("variant", ["delta", "jump"])
def test_table3_fd_hits_iteration_cap(acceptance, table3, variant):
    rows, _ = table3
    r = rows[(variant, "fd")]
    ok = r["termination"] == "IterationCap" and r["iterations"] == 19999
    acceptance.check(f"Table 3 (ii) {variant}/fd capped", ok, _row_summary(r))


@pytest.mark.parametrize("variant", ["delta", "jump"])
def test_table3_chebyshev_converges_on_noisy(acceptance, table3, variant):
    rows, _ = table3
    r = rows[(variant, "chebyshev")]
    ok = r["termination"] == "Converged" and r["distance"] <= 1e-2
    acceptance.check(f"Table 3 (iii) {variant}/chebyshev converges", ok, _row_summary(r))


def test_table3_chebyshev_closer_on_jump(acceptance, table3):
    rows, elapsed = table3
    cheb, fd = rows[("jump", "chebyshev")]["distance"], rows[("jump", "fd")]["distance"]
    acceptance.check(
        "Table 3 (iv) jump: chebyshev closer than fd",
        cheb < fd,
        f"chebyshev d={cheb:.2e}, fd d={fd:.2e}",
    )


def test_table3_runtime(acceptance, table3):
    _, elapsed = table3
    acceptance.check("Table 3 runtime", elapsed < 60.0, f"{elapsed:.1f}s for all seven runs")


# ----------------------------------------------------------------------
# Subgradient, gradient oracle, CLI determinism
# ----------------------------------------------------------------------


def test_subgradient_of_abs(acceptance):
    kinks = KinkSet((0.0,), -1.0, 1.0)
    pair = derivative_at(abs, 0.0, DiffConfig(h=1e-2, node_count=3), kinks)
    pair5 = derivative_at(abs, 0.0, DiffConfig(), kinks)
    weak = derivative_at(abs, 0.0, DiffConfig(mode="weak"), kinks)
    gap = max(abs(pair.left + 1), abs(pair.right - 1), abs(pair5.left + 1), abs(pair5.right - 1))
    ok = gap <= 1e-12 and weak.value == 0.0 and weak.value == (weak.left + weak.right) / 2
    acceptance.check(
        "Subgradient of |x| at 0",
        ok,
        f"pair ({pair.left:+.15f}, {pair.right:+.15f}), max gap {gap:.1e}, weak {weak.value!r}",
    )


def test_gradient_oracle_against_analytic(acceptance):
    rng = np.random.default_rng(5)
    cfg = DiffConfig(h=1e-4, node_count=5)
    worst = 0.0
    for x in rng.uniform(-2, 2, (100, 2)):
        worst = max(worst, float(np.abs(gradient(rosenbrock, x, cfg) - rosenbrock_grad(x)).max()))
    acceptance.check("Gradient oracle vs analytic", worst <= 1e-6, f"100 points, max error {worst:.2e}")


def test_cli_table2_deterministic(acceptance):
    exe = shutil.which("chebdiff")
    cmd = [exe] if exe else [sys.executable, "-m", "chebdiff.cli"]
    cmd += ["bench", "table2", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    ok = first == second and first.startswith(b"x,h,f_h,C3,C5,C7\n") and b"\r" not in first
    acceptance.check(
        "CLI determinism",
        ok,
        f"two runs of '{' '.join(cmd[-4:])}', {len(first)} bytes, identical={first == second}",
    )
