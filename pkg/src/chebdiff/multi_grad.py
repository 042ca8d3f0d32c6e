"""Directional derivatives and gradients of fields f: R^M -> R.

A direction d at x reduces f to the line function g(t) = f(x + t d), which
is differentiated at t = 0 with the one-dimensional machinery. The result is
the derivative with respect to t, so it scales with |d|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chebdiff.errors import ChebDiffError, DomainViolation
from chebdiff.local_diff import DerivativeEstimate, DiffConfig, KinkSet, Mode, derivative_at

FieldFn = Callable[[NDArray[np.float64]], float]

__all__ = ["Box", "GradientError", "as_direction", "as_point", "directional_derivative", "gradient"]


class GradientError(ChebDiffError):
    """A coordinate derivative failed while assembling a gradient."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"gradient component {index} failed: {cause}")


@dataclass(frozen=True)
class Box:
    """Axis-aligned domain; infinite bounds are allowed."""

    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        lo = np.asarray(self.lower, dtype=np.float64)
        hi = np.asarray(self.upper, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("box bounds must be 1-D arrays of equal length")
        if np.any(lo >= hi):
            raise ValueError("box requires lower < upper in every coordinate")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def contains(self, x: NDArray[np.float64]) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def t_range(self, x: NDArray[np.float64], d: NDArray[np.float64]) -> tuple[float, float]:
        """Interval of t for which x + t d stays inside the box."""
        t_lo, t_hi = -math.inf, math.inf
        for xi, di, lo, hi in zip(x, d, self.lower, self.upper):
            if di == 0:
                continue
            a, b = (lo - xi) / di, (hi - xi) / di
            if a > b:
                a, b = b, a
            t_lo, t_hi = max(t_lo, a), min(t_hi, b)
        return t_lo, t_hi


def as_point(x: ArrayLike) -> NDArray[np.float64]:
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.ndim != 1 or x.size == 0:
        raise ValueError("a point must be a non-empty vector")
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    return x


def as_direction(d: ArrayLike, dim: int) -> NDArray[np.float64]:
    d = as_point(d)
    if d.size != dim:
        raise ValueError(f"direction has length {d.size}, point has {dim}")
    if not np.any(d):
        raise ValueError("direction must be nonzero")
    return d


def _line_kinks(x, d, kinks: KinkSet | None, domain: Box | None) -> KinkSet:
    lo, hi = -math.inf, math.inf
    if domain is not None:
        if not domain.contains(x):
            raise DomainViolation(f"point {x.tolist()} outside the domain box")
        lo, hi = domain.t_range(x, d)
    if kinks is None:
        return KinkSet.empty(lo, hi)
    # caller-given kinks already live on the t axis; intersect the domains
    return KinkSet(
        kinks.points, max(lo, kinks.domain_lo), min(hi, kinks.domain_hi)
    )


def directional_derivative(
    f: FieldFn,
    x: ArrayLike,
    direction: ArrayLike,
    cfg: DiffConfig | None = None,
    kinks: KinkSet | None = None,
    domain: Box | None = None,
) -> DerivativeEstimate:
    """Derivative of t -> f(x + t*direction) at t = 0.

    ``kinks`` are positions on the t axis. With a ``domain`` box the t axis
    is clipped to the part of the line inside the box, so windows near the
    boundary become one-sided instead of leaving the domain.
    """
    x = as_point(x)
    d = as_direction(direction, x.size)
    line = _line_kinks(x, d, kinks, domain)

    def g(t: float) -> float:
        return float(f(x + t * d))

    return derivative_at(g, 0.0, cfg, line)


def gradient(
    f: FieldFn,
    x: ArrayLike,
    cfg: DiffConfig | None = None,
    domain: Box | None = None,
) -> NDArray[np.float64]:
    """Gradient from one classical directional derivative per coordinate axis.

    Costs M * N evaluations of ``f``; nothing is shared across coordinates.

    Raises
    ------
    GradientError
        Wrapping the underlying failure, with the coordinate ``index``.
    """
    x = as_point(x)
    cfg = cfg or DiffConfig()
    if cfg.mode is not Mode.CLASSICAL:
        raise ValueError("gradient assembly needs classical mode")
    grad = np.empty(x.size)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = 1.0
        try:
            est = directional_derivative(f, x, e, cfg, None, domain)
        except ChebDiffError as exc:
            raise GradientError(i, exc) from exc
        grad[i] = est.value
    return grad
