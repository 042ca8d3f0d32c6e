"""Numerical derivatives of black-box functions from local Chebyshev interpolants."""

from chebdiff.cheb_core import (
    AffineMap,
    ChebInterpolant,
    SeriesCoefficients,
    Window,
    differentiate,
    evaluate,
    exact_series_coefficients,
    gauss_lobatto_nodes,
    interpolate,
)
from chebdiff.errors import (
    ChebDiffError,
    DomainViolation,
    LineSearchFailed,
    NonFiniteSample,
    ShrinkExhausted,
)
from chebdiff.local_diff import (
    DerivativeEstimate,
    DiffConfig,
    KinkSet,
    central_difference,
    derivative_at,
    select_window,
    smoothness_diagnostic,
)
from chebdiff.multi_grad import directional_derivative, gradient

__version__ = "0.1.0"
