"""Derivatives of piecewise smooth functions from local Chebyshev interpolants.

Around a query point x a window is chosen whose open interior avoids every
known kink, shrinking the half-width until that holds. On a kink the
derivative is replaced by the pair of one-sided derivatives taken from the
windows [x - h, x] and [x, x + h].
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from chebdiff.cheb_core import ChebInterpolant, Window, differentiate, interpolate
from chebdiff.errors import DomainViolation, NonFiniteSample, ShrinkExhausted

ScalarFn = Callable[[float], float]

__all__ = [
    "DerivativeEstimate",
    "DiffConfig",
    "EstimateKind",
    "KinkSet",
    "Mode",
    "SmoothnessReport",
    "WindowChoice",
    "central_difference",
    "derivative_at",
    "select_window",
    "smoothness_diagnostic",
]


class Mode(str, enum.Enum):
    CLASSICAL = "classical"
    SUBGRADIENT = "subgradient"
    WEAK = "weak"


class EstimateKind(str, enum.Enum):
    CLASSICAL = "Classical"
    SUBGRADIENT = "Subgradient"
    WEAK = "Weak"


@dataclass(frozen=True)
class KinkSet:
    """Known non-differentiable points inside the domain [domain_lo, domain_hi].

    Domain ends may be infinite for functions defined on the whole line.
    """

    points: tuple[float, ...] = ()
    domain_lo: float = -math.inf
    domain_hi: float = math.inf

    def __post_init__(self) -> None:
        pts = tuple(sorted(float(p) for p in self.points))
        object.__setattr__(self, "points", pts)
        if not self.domain_lo < self.domain_hi:
            raise ValueError(
                f"kink set domain requires lo < hi, got [{self.domain_lo}, {self.domain_hi}]"
            )
        for p in pts:
            if not (math.isfinite(p) and self.domain_lo <= p <= self.domain_hi):
                raise ValueError(f"kink {p} outside domain [{self.domain_lo}, {self.domain_hi}]")

    @classmethod
    def empty(cls, domain_lo: float = -math.inf, domain_hi: float = math.inf) -> "KinkSet":
        return cls((), domain_lo, domain_hi)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        """True if some kink lies within ``tol`` of ``x``."""
        i = bisect.bisect_left(self.points, x - tol)
        return i < len(self.points) and self.points[i] <= x + tol

    def hits_open(self, c: float, d: float) -> bool:
        """True if a kink lies strictly inside (c, d)."""
        i = bisect.bisect_right(self.points, c)
        return i < len(self.points) and self.points[i] < d


@dataclass(frozen=True)
class DiffConfig:
    """Settings for :func:`derivative_at`.

    ``mode`` selects the result type. CLASSICAL follows the kink set: a
    plain derivative off the kinks, a subgradient pair on them. SUBGRADIENT
    always returns the one-sided pair and WEAK its mean.
    """

    h: float = 1e-4
    node_count: int = 5
    shrink_factor: float = 0.5
    max_shrinks: int = 52
    kink_tolerance: float = 0.0
    mode: Mode = Mode.CLASSICAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"h must be positive and finite, got {self.h}")
        if int(self.node_count) != self.node_count or self.node_count < 2:
            raise ValueError(f"node_count must be an integer >= 2, got {self.node_count}")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError(f"shrink_factor must lie in (0, 1), got {self.shrink_factor}")
        if self.max_shrinks < 1:
            raise ValueError("max_shrinks must be positive")
        if self.kink_tolerance < 0:
            raise ValueError("kink_tolerance must be non-negative")


@dataclass(frozen=True)
class WindowChoice:
    """Outcome of :func:`select_window`.

    Exactly one of ``window`` (classical) or ``pair`` (left, right) is set.
    ``anchor`` is the reference coordinate of x inside ``window``: 0 for a
    centred window, -1 or +1 for a one-sided window at a domain boundary.
    """

    h: float
    shrinks: int
    window: Window | None = None
    anchor: float = 0.0
    pair: tuple[Window, Window] | None = None

    @property
    def one_sided(self) -> bool:
        return self.pair is not None


@dataclass(frozen=True)
class DerivativeEstimate:
    kind: EstimateKind
    value: float | None = None
    left: float | None = None
    right: float | None = None
    window_used: Window | tuple[Window, Window] | None = None
    shrinks_performed: int = 0

    def __float__(self) -> float:
        if self.value is None:
            raise TypeError("a subgradient pair has no single value; use .left/.right")
        return float(self.value)

    @property
    def interval(self) -> tuple[float, float]:
        """(min, max) of the estimate; degenerate for a single value."""
        if self.value is not None and self.left is None:
            return (self.value, self.value)
        return (min(self.left, self.right), max(self.left, self.right))


def _check_domain(x: float, kinks: KinkSet) -> None:
    if not math.isfinite(x):
        raise DomainViolation(f"query point must be finite, got {x!r}")
    if not kinks.domain_lo <= x <= kinks.domain_hi:
        raise DomainViolation(
            f"x={x!r} outside domain [{kinks.domain_lo}, {kinks.domain_hi}]"
        )


def _admissible(c: float, d: float, kinks: KinkSet) -> bool:
    return (
        c < d
        and c >= kinks.domain_lo
        and d <= kinks.domain_hi
        and not kinks.hits_open(c, d)
    )


def _centred_or_clamped(
    x: float, h: float, n: int, kinks: KinkSet
) -> tuple[Window, float] | None:
    c, d = x - h, x + h
    if c >= kinks.domain_lo and d <= kinks.domain_hi:
        if _admissible(c, d, kinks):
            return Window(c, d, n), 0.0
        return None
    # near a boundary: fall back to the one-sided window that fits
    if c < kinks.domain_lo and _admissible(x, d, kinks):
        return Window(x, d, n), -1.0
    if d > kinks.domain_hi and _admissible(c, x, kinks):
        return Window(c, x, n), 1.0
    return None


def select_window(x: float, cfg: DiffConfig, kinks: KinkSet) -> WindowChoice:
    """Find a kink-free window around ``x``, shrinking h as needed.

    Off the kink set (and in CLASSICAL mode) the window is [x - h, x + h],
    or a one-sided window when x sits within h of a domain end. On a kink,
    or in SUBGRADIENT/WEAK mode, it is the pair [x - h, x], [x, x + h].
    A kink exactly on a window end is allowed.

    Raises
    ------
    DomainViolation
        If ``x`` lies outside the kink set's domain, or a one-sided pair is
        requested at a domain end.
    ShrinkExhausted
        If ``cfg.max_shrinks`` shrinks do not produce an admissible window.
    """
    _check_domain(x, kinks)
    n = cfg.node_count
    two_sided = cfg.mode is not Mode.CLASSICAL or kinks.contains(x, cfg.kink_tolerance)
    if two_sided and not (kinks.domain_lo < x < kinks.domain_hi):
        raise DomainViolation(f"one-sided pair at x={x!r} needs room on both sides")

    h = cfg.h
    for shrinks in range(cfg.max_shrinks + 1):
        if shrinks:
            h *= cfg.shrink_factor
        if two_sided:
            c, d = x - h, x + h
            if _admissible(c, x, kinks) and _admissible(x, d, kinks):
                return WindowChoice(h, shrinks, pair=(Window(c, x, n), Window(x, d, n)))
        else:
            found = _centred_or_clamped(x, h, n, kinks)
            if found is not None:
                window, anchor = found
                return WindowChoice(h, shrinks, window=window, anchor=anchor)
    raise ShrinkExhausted(x, h, cfg.max_shrinks)


def _slope(p: ChebInterpolant, anchor: float) -> float:
    return float(differentiate(p).at_reference(anchor))


def derivative_at(
    f: ScalarFn, x: float, cfg: DiffConfig | None = None, kinks: KinkSet | None = None
) -> DerivativeEstimate:
    """Derivative of ``f`` at ``x`` from the local smooth Chebyshev polynomial.

    Parameters
    ----------
    f : callable
        Scalar black-box function of one float.
    x : float
        Query point.
    cfg : DiffConfig, optional
        Window half-width, node count, shrink rule and result mode.
    kinks : KinkSet, optional
        Known kinks and the domain; defaults to none on the whole line.

    Returns
    -------
    DerivativeEstimate
        ``Classical`` with ``value``; ``Subgradient`` with ``left``/``right``
        (derivatives of the left and right one-sided interpolants at x); or
        ``Weak`` with ``value`` equal to their mean.
    """
    cfg = cfg or DiffConfig()
    kinks = kinks or KinkSet.empty()
    choice = select_window(x, cfg, kinks)

    if not choice.one_sided:
        value = _slope(interpolate(f, choice.window), choice.anchor)
        return DerivativeEstimate(
            EstimateKind.CLASSICAL,
            value=value,
            window_used=choice.window,
            shrinks_performed=choice.shrinks,
        )

    left_w, right_w = choice.pair
    # x is the right end of the left window and the left end of the right one
    left = _slope(interpolate(f, left_w), 1.0)
    right = _slope(interpolate(f, right_w), -1.0)
    if cfg.mode is Mode.WEAK:
        return DerivativeEstimate(
            EstimateKind.WEAK,
            value=(left + right) / 2,
            left=left,
            right=right,
            window_used=choice.pair,
            shrinks_performed=choice.shrinks,
        )
    return DerivativeEstimate(
        EstimateKind.SUBGRADIENT,
        left=left,
        right=right,
        window_used=choice.pair,
        shrinks_performed=choice.shrinks,
    )


def central_difference(f: ScalarFn, x: float, h: float) -> float:
    """Central difference quotient (f(x+h) - f(x-h)) / 2h.

    The divisor is the spacing actually realised in floating point,
    (x + h) - (x - h), so the quotient is the exact slope of the secant
    through the two sampled points.
    """
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    xp, xm = x + h, x - h
    fp, fm = float(f(xp)), float(f(xm))
    if not math.isfinite(fp):
        raise NonFiniteSample(xp, fp)
    if not math.isfinite(fm):
        raise NonFiniteSample(xm, fm)
    return (fp - fm) / (xp - xm)


@dataclass(frozen=True)
class SmoothnessReport:
    magnitudes: np.ndarray = field(repr=False)
    tail_ratio: float
    threshold: float

    @property
    def suspect(self) -> bool:
        return self.tail_ratio > self.threshold

    @property
    def verdict(self) -> str:
        return "suspect" if self.suspect else "smooth"


def smoothness_diagnostic(
    f: ScalarFn, window: Window, threshold: float = 1e-3
) -> SmoothnessReport:
    """Heuristic kink indicator from the decay of interpolation coefficients.

    Compares the last two coefficient magnitudes with the largest one. A
    smooth function resolved on the window leaves a tail near rounding
    level; a kink inside the window decays only algebraically. No guarantee
    either way.
    """
    if window.node_count < 4:
        raise ValueError("smoothness_diagnostic needs node_count >= 4")
    mags = np.abs(interpolate(f, window).coeffs)
    head = float(mags.max())
    floor = np.finfo(float).eps * head + np.finfo(float).tiny
    ratio = float(max(mags[-2], mags[-1]) / (head + floor))
    return SmoothnessReport(mags, ratio, threshold)

