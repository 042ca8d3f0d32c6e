"""Chebyshev primitives on Gauss-Lobatto grids.

Everything here works with the expansion

    p(t) = b_0/2 + sum_{k>=1} b_k T_k(t),    t in [-1, 1],

bound to a physical window [lo, hi] through an affine map. A window with
``node_count`` N samples the function at the N Gauss-Lobatto points, so the
interpolant has degree N - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chebdiff.errors import NonFiniteSample

ScalarFn = Callable[[float], float]

__all__ = [
    "AffineMap",
    "ChebInterpolant",
    "SeriesCoefficients",
    "Window",
    "clenshaw",
    "differentiate",
    "evaluate",
    "exact_series_coefficients",
    "gauss_lobatto_nodes",
    "interpolate",
    "interpolate_values",
    "reference_nodes",
]


@dataclass(frozen=True)
class Window:
    """Closed interval [lo, hi] sampled at ``node_count`` Gauss-Lobatto points.

    ``node_count`` may be 1 only for the coefficient container returned by
    :func:`differentiate` on a two-node interpolant; sampling needs at least 2.
    """

    lo: float
    hi: float
    node_count: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"window ends must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"window requires lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.node_count) != self.node_count or self.node_count < 1:
            raise ValueError(f"node_count must be a positive integer, got {self.node_count}")

    @classmethod
    def centered(cls, x: float, h: float, node_count: int) -> "Window":
        return cls(x - h, x + h, node_count)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def map(self) -> "AffineMap":
        return AffineMap(self.lo, self.hi)

    def with_nodes(self, node_count: int) -> "Window":
        return Window(self.lo, self.hi, node_count)


@dataclass(frozen=True)
class AffineMap:
    """Affine bijection between [a_dom, b_dom] and [-1, 1].

    Both directions are written so that the endpoints map exactly.
    """

    a_dom: float
    b_dom: float

    def __post_init__(self) -> None:
        if not self.a_dom < self.b_dom:
            raise ValueError(f"affine map requires a_dom < b_dom, got {self.a_dom}, {self.b_dom}")

    def forward(self, x: ArrayLike) -> NDArray[np.float64] | float:
        x = np.asarray(x, dtype=np.float64)
        t = ((x - self.a_dom) - (self.b_dom - x)) / (self.b_dom - self.a_dom)
        return t if t.ndim else float(t)

    def inverse(self, t: ArrayLike) -> NDArray[np.float64] | float:
        t = np.asarray(t, dtype=np.float64)
        x = 0.5 * (self.a_dom * (1.0 - t) + self.b_dom * (1.0 + t))
        return x if x.ndim else float(x)

    @property
    def scale(self) -> float:
        """dt/dx, the chain-rule factor for derivatives."""
        return 2.0 / (self.b_dom - self.a_dom)


@dataclass(frozen=True)
class ChebInterpolant:
    """Chebyshev coefficients ``b_0 .. b_{N-1}`` attached to a window.

    The leading coefficient enters the expansion halved, ``b_0/2``.
    """

    window: Window
    coeffs: NDArray[np.float64]

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.float64)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.ndim != 1 or coeffs.size != self.window.node_count:
            raise ValueError(
                f"expected {self.window.node_count} coefficients, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Chebyshev coefficients must be finite")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x: ArrayLike) -> NDArray[np.float64] | float:
        return evaluate(self, x)

    def at_reference(self, t: ArrayLike) -> NDArray[np.float64] | float:
        """Evaluate at reference coordinates t in [-1, 1], skipping the map."""
        return clenshaw(self.coeffs, t)


@dataclass(frozen=True)
class SeriesCoefficients:
    """Exact series coefficients ``a_0 .. a_K`` (``a_0`` enters halved)."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if not np.all(np.isfinite(values)):
            raise ValueError("series coefficients must be finite")

    def __getitem__(self, n: int) -> float:
        return float(self.values[n])

    def __len__(self) -> int:
        return self.values.size


def _cos_pi_ratio(m: NDArray[np.int64], n: int) -> NDArray[np.float64]:
    """cos(pi*m/n) for integer m, exact at the zeros and at +-1.

    Folding into [0, n] and rewriting as a sine keeps cos(pi/2) == 0 and
    cos(pi) == -1 exactly, which the three-point rule depends on.
    """
    m = np.mod(m, 2 * n)
    m = np.where(m > n, 2 * n - m, m)
    return np.sin(np.pi * (n - 2 * m) / (2 * n))


def reference_nodes(node_count: int) -> NDArray[np.float64]:
    """Gauss-Lobatto points -cos(k*pi/n), k = 0..n, on [-1, 1], ascending."""
    if int(node_count) != node_count or node_count < 2:
        raise ValueError(f"Gauss-Lobatto grid needs node_count >= 2, got {node_count}")
    n = node_count - 1
    k = np.arange(node_count)
    # sin form: exact 0 at the centre, exact +-1 at the ends, antisymmetric
    return np.sin(np.pi * (2 * k - n) / (2 * n))


def gauss_lobatto_nodes(window: Window) -> NDArray[np.float64]:
    """Gauss-Lobatto nodes of ``window``, ascending, endpoints included.

    Examples
    --------
    >>> gauss_lobatto_nodes(Window(0.0, 1.0, 3)).tolist()
    [0.0, 0.5, 1.0]
    """
    nodes = np.asarray(window.map.inverse(reference_nodes(window.node_count)))
    nodes[0] = window.lo
    nodes[-1] = window.hi
    return nodes


def _lobatto_transform(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Map samples at ascending Gauss-Lobatto nodes to coefficients b_k.

    b_k = (2/n) * sum''_j f_j cos(k*pi*(n-j)/n), with the last coefficient
    halved afterwards so that the expansion uses b_n at full weight.
    """
    n = values.size - 1
    j = np.arange(n + 1)
    k = j[:, None]
    # ascending nodes: x_j = cos(pi*(n-j)/n)
    basis = _cos_pi_ratio(k * (n - j)[None, :], n)
    weighted = values.copy()
    weighted[0] *= 0.5
    weighted[-1] *= 0.5
    coeffs = (2.0 / n) * (basis @ weighted)
    coeffs[-1] *= 0.5
    return coeffs


def _correct_node_rounding(values: NDArray[np.float64], window: Window) -> NDArray[np.float64]:
    """Shift samples taken at rounded nodes onto the exact Gauss-Lobatto points.

    f is sampled at the floating-point nodes, which miss the exact points by
    up to ulp(x)/2; left alone that costs |f'|*ulp(x)/h in the derivative.
    One first-order step with the interpolant's own slope removes it.
    """
    t_exact = reference_nodes(window.node_count)
    t_seen = np.asarray(window.map.forward(gauss_lobatto_nodes(window)))
    offset = t_exact - t_seen
    if not np.any(offset):
        return values
    coeffs = _lobatto_transform(values)
    slope = clenshaw(differentiate(ChebInterpolant(window, coeffs)).coeffs / window.map.scale, t_seen)
    return values + slope * offset


def interpolate_values(values: ArrayLike, window: Window) -> ChebInterpolant:
    """Build the interpolant from samples already taken at the window's nodes."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (window.node_count,):
        raise ValueError(f"expected {window.node_count} samples, got shape {values.shape}")
    if window.node_count < 2:
        raise ValueError("interpolation needs node_count >= 2")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        nodes = gauss_lobatto_nodes(window)
        i = int(bad[0])
        raise NonFiniteSample(float(nodes[i]), float(values[i]))
    values = _correct_node_rounding(values, window)
    return ChebInterpolant(window, _lobatto_transform(values))


def interpolate(f: ScalarFn, window: Window) -> ChebInterpolant:
    """Chebyshev interpolant of ``f`` at the Gauss-Lobatto nodes of ``window``.

    ``f`` is called once per node, sequentially, with a Python float.

    Raises
    ------
    NonFiniteSample
        If any sample is NaN or infinite; the offending node is reported.
    """
    nodes = gauss_lobatto_nodes(window)
    values = np.empty(nodes.size)
    for i, x in enumerate(nodes):
        v = float(f(float(x)))
        if not math.isfinite(v):
            raise NonFiniteSample(float(x), v)
        values[i] = v
    return interpolate_values(values, window)


def clenshaw(coeffs: ArrayLike, t: ArrayLike) -> NDArray[np.float64] | float:
    """Evaluate b_0/2 + sum b_k T_k(t) by Clenshaw's backward recurrence."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    y1 = np.zeros_like(t)
    y2 = np.zeros_like(t)
    two_t = 2.0 * t
    for c in coeffs[:0:-1]:
        y1, y2 = c + two_t * y1 - y2, y1
    out = 0.5 * coeffs[0] + t * y1 - y2
    return out if out.ndim else float(out)


def evaluate(p: ChebInterpolant, x: ArrayLike) -> NDArray[np.float64] | float:
    """Value of the interpolant at physical point(s) ``x``.

    Points outside the window are extrapolated without complaint.
    """
    return clenshaw(p.coeffs, p.window.map.forward(x))


def differentiate(p: ChebInterpolant) -> ChebInterpolant:
    """Exact derivative of the interpolant, one coefficient shorter.

    Uses d_{k-1} = d_{k+1} + 2k b_k (the coefficient form of T_n' = n U_{n-1}),
    then rescales by 2/(hi - lo) for the window.
    """
    b = p.coeffs
    n = b.size - 1
    w = p.window
    if n == 0:
        return ChebInterpolant(w, np.zeros(1))
    d = np.zeros(n + 2)
    for k in range(n, 0, -1):
        d[k - 1] = d[k + 1] + 2.0 * k * b[k]
    # doubling is exact, so the chain-rule factor costs a single rounding
    return ChebInterpolant(w.with_nodes(n), d[:n] * 2.0 / w.width)


def exact_series_coefficients(
    f: ScalarFn, K: int, quadrature_points: int = 2048
) -> SeriesCoefficients:
    """Series coefficients a_n = <f, T_n>_w for n = 0..K by quadrature.

    With x = cos(theta) the weighted integral becomes
    (2/pi) * int_0^pi f(cos theta) cos(n theta) dtheta, evaluated with the
    M-point Gauss-Chebyshev (midpoint) rule. Intended as a test oracle; it
    shares no code path with :func:`interpolate`.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    M = int(quadrature_points)
    if M <= K:
        raise ValueError("quadrature_points must exceed K")
    theta = (np.arange(M) + 0.5) * np.pi / M
    samples = np.empty(M)
    for i, x in enumerate(np.cos(theta)):
        v = float(f(float(x)))
        if not math.isfinite(v):
            raise NonFiniteSample(float(x), v)
        samples[i] = v
    n = np.arange(K + 1)[:, None]
    a = (2.0 / M) * (np.cos(n * theta[None, :]) @ samples)
    return SeriesCoefficients(a)
