"""Exception hierarchy shared by all chebdiff modules."""

from __future__ import annotations


class ChebDiffError(Exception):
    """Base class for every numerical failure raised by chebdiff."""


class NonFiniteSample(ChebDiffError, ValueError):
    """A function sample came back NaN or infinite."""

    def __init__(self, node: float, value: float, message: str | None = None):
        self.node = node
        self.value = value
        super().__init__(message or f"non-finite sample f({node!r}) = {value!r}")


class DomainViolation(ChebDiffError, ValueError):
    """A query point lies outside the admissible domain."""


class ShrinkExhausted(ChebDiffError):
    """No kink-free window was found within the allowed number of shrinks."""

    def __init__(self, x: float, h: float, shrinks: int):
        self.x = x
        self.h = h
        self.shrinks = shrinks
        super().__init__(
            f"no admissible window around x={x!r} after {shrinks} shrinks (last h={h!r})"
        )


class LineSearchFailed(ChebDiffError):
    """Armijo backtracking ran out of trial steps without sufficient decrease."""

    def __init__(self, backtracks: int, last_step: float):
        self.backtracks = backtracks
        self.last_step = last_step
        super().__init__(
            f"Armijo condition not met after {backtracks} backtracks (last step {last_step!r})"
        )
