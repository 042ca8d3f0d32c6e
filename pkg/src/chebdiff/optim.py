"""Steepest descent with Armijo backtracking and swappable gradient oracles."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray

from chebdiff.errors import ChebDiffError, LineSearchFailed
from chebdiff.local_diff import DiffConfig, central_difference
from chebdiff.multi_grad import as_point, gradient

FieldFn = Callable[[NDArray[np.float64]], float]

log = logging.getLogger(__name__)

__all__ = [
    "DescentParams",
    "ExactGradient",
    "FiniteDifferenceGradient",
    "GradientOracle",
    "Iterate",
    "LocalChebyshevGradient",
    "OptimizationTrace",
    "Termination",
    "armijo_step",
    "steepest_descent",
]


class GradientOracle(Protocol):
    name: str

    def __call__(self, f: FieldFn, x: NDArray[np.float64]) -> NDArray[np.float64]: ...


@dataclass(frozen=True)
class ExactGradient:
    """Analytic gradient supplied by the caller; ``f`` is ignored."""

    grad: Callable[[NDArray[np.float64]], ArrayLike]
    name: str = "exact"

    def __call__(self, f: FieldFn, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(self.grad(x), dtype=np.float64)


@dataclass(frozen=True)
class FiniteDifferenceGradient:
    """Coordinate-wise central differences with step ``h``."""

    h: float = 1e-6
    name: str = "fd"

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ValueError(f"finite-difference step must be positive, got {self.h}")

    def __call__(self, f: FieldFn, x: NDArray[np.float64]) -> NDArray[np.float64]:
        g = np.empty(x.size)
        for i in range(x.size):
            e = np.zeros(x.size)
            e[i] = 1.0
            g[i] = central_difference(lambda t: float(f(x + t * e)), 0.0, self.h)
        return g


@dataclass(frozen=True)
class LocalChebyshevGradient:
    """Gradient from local Chebyshev interpolants along each coordinate."""

    cfg: DiffConfig = field(default_factory=DiffConfig)
    name: str = "chebyshev"

    def __call__(self, f: FieldFn, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return gradient(f, x, self.cfg)


@dataclass(frozen=True)
class DescentParams:
    armijo_slope: float = 1e-4
    backtrack_factor: float = 0.5
    initial_step: float = 1.0
    grad_tol: float = 1e-3
    max_iterations: int = 19999
    max_backtracks: int = 60

    def __post_init__(self) -> None:
        if not 0 < self.armijo_slope < 1:
            raise ValueError("armijo_slope must lie in (0, 1)")
        if not 0 < self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must lie in (0, 1)")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if self.max_iterations < 1 or self.max_backtracks < 1:
            raise ValueError("iteration limits must be positive")


class Termination(str, enum.Enum):
    CONVERGED = "Converged"
    ITERATION_CAP = "IterationCap"
    LINE_SEARCH_FAILED = "LineSearchFailed"


@dataclass(frozen=True)
class Iterate:
    point: NDArray[np.float64]
    value: float
    grad_norm: float
    step: float  # step that produced this point; 0 for the start


@dataclass
class OptimizationTrace:
    iterates: list[Iterate]
    termination: Termination | None = None
    error: Exception | None = None

    @property
    def final_point(self) -> NDArray[np.float64]:
        return self.iterates[-1].point

    @property
    def iteration_count(self) -> int:
        return len(self.iterates) - 1


def _backtrack(f, x, g, gg, f0, params):
    # a stochastic objective gets a fresh reference sample per trial, so one
    # lucky low draw of f(x) cannot veto every step
    resample = getattr(f, "stochastic", False)
    alpha = params.initial_step
    for j in range(params.max_backtracks + 1):
        trial = x - alpha * g
        f_trial = float(f(trial))
        if resample and j:
            f0 = float(f(x))
        if f_trial <= f0 - params.armijo_slope * alpha * gg:
            return alpha, trial, f_trial
        alpha *= params.backtrack_factor
    raise LineSearchFailed(params.max_backtracks, alpha / params.backtrack_factor)


def armijo_step(
    f: FieldFn,
    x: ArrayLike,
    g: ArrayLike,
    params: DescentParams | None = None,
    fx: float | None = None,
) -> tuple[float, NDArray[np.float64]]:
    """Backtrack along -g until f(x - a g) <= f(x) - slope * a * |g|^2.

    Trial steps are initial_step * backtrack_factor**j for j = 0, 1, ...,
    max_backtracks; the first admissible one is returned with the new point.
    ``fx`` may pass in a known f(x) to save an evaluation.

    Raises
    ------
    LineSearchFailed
        If no trial step satisfies the sufficient-decrease condition.
    """
    params = params or DescentParams()
    x = as_point(x)
    g = np.asarray(g, dtype=np.float64)
    gg = float(g @ g)
    if gg == 0.0:
        raise ValueError("armijo_step needs a nonzero gradient")
    f0 = float(f(x)) if fx is None else fx
    alpha, trial, _ = _backtrack(f, x, g, gg, f0, params)
    return alpha, trial


def steepest_descent(
    f: FieldFn,
    oracle: GradientOracle,
    x0: ArrayLike,
    params: DescentParams | None = None,
    seed: int | None = None,
) -> OptimizationTrace:
    """Run x_{k+1} = x_k - a_k g_k until the oracle gradient norm drops below grad_tol.

    The stopping test uses the oracle's own (possibly noisy) gradient. If
    ``seed`` is given and ``f`` has a ``reseed`` method, it is called first
    so that stochastic objectives replay identically. Objectives with a true
    ``stochastic`` attribute have f(x) re-sampled for every Armijo trial.

    Oracle failures are re-raised with the partial trace attached as
    ``exc.trace``; a failed line search ends the run with termination
    ``LineSearchFailed`` instead.
    """
    params = params or DescentParams()
    if seed is not None and hasattr(f, "reseed"):
        f.reseed(seed)
    x = as_point(x0)
    trace = OptimizationTrace([])
    step = 0.0
    for k in range(params.max_iterations + 1):
        # fresh sample each iteration; reusing the accepted trial value would
        # carry a downward-selected noise draw into the next Armijo test
        fx = float(f(x))
        try:
            g = np.asarray(oracle(f, x), dtype=np.float64)
        except ChebDiffError as exc:
            trace.iterates.append(Iterate(x, fx, float("nan"), step))
            trace.error = exc
            exc.trace = trace
            raise
        norm = float(np.linalg.norm(g))
        trace.iterates.append(Iterate(x, fx, norm, step))
        if norm < params.grad_tol:
            trace.termination = Termination.CONVERGED
            break
        if k == params.max_iterations:
            trace.termination = Termination.ITERATION_CAP
            break
        try:
            step, x, _ = _backtrack(f, x, g, norm * norm, fx, params)
        except LineSearchFailed as exc:
            trace.termination = Termination.LINE_SEARCH_FAILED
            trace.error = exc
            break
    log.debug(
        "%s: %s after %d iterations at %s",
        getattr(oracle, "name", "oracle"),
        trace.termination.value,
        trace.iteration_count,
        trace.final_point,
    )
    return trace
