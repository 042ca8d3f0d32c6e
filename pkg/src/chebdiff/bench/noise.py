"""Seeded disturbances added to benchmark functions.

Random streams come from numpy's Philox4x64-10 counter-based generator,
keyed through ``SeedSequence(seed, spawn_key=key)``. A key identifies one
run (a table row, a sample, an optimizer run), so streams are isolated and
reproducible no matter which other rows are computed or in what order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "DELTA_SIGMA",
    "GaussianNoise",
    "Noisy",
    "SignJumpNoise",
    "make_rng",
]

DELTA_SIGMA = 3.3e-7


def make_rng(seed: int, key: Sequence[int] = ()) -> np.random.Generator:
    """Philox generator for substream ``key`` of ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


@dataclass
class GaussianNoise:
    """Fresh N(0, sigma^2) draw per call, optionally clipped to [-clip, clip].

    Each call consumes one normal variate from the stream, so results depend
    on the order of evaluations as well as the seed.
    """

    sigma: float
    clip: float | None = None
    seed: int = 0
    key: tuple[int, ...] = ()
    stochastic: bool = field(default=True, init=False)

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValueError("noise sigma must be non-negative")
        if self.clip is not None and self.clip < 0:
            raise ValueError("clip amplitude must be non-negative")
        self.reseed(self.seed, self.key)

    def reseed(self, seed: int, key: Sequence[int] | None = None) -> None:
        self.seed = int(seed)
        if key is not None:
            self.key = tuple(key)
        self._rng = make_rng(self.seed, self.key)

    @property
    def amplitude(self) -> float:
        return self.clip if self.clip is not None else math.inf

    def __call__(self, x) -> float:
        if self.sigma == 0:
            return 0.0
        v = float(self._rng.normal(0.0, self.sigma))
        if self.clip is not None:
            v = min(max(v, -self.clip), self.clip)
        return v


@dataclass
class SignJumpNoise:
    """Deterministic jump noise amplitude * sgn(sin(frequency * sum(x))).

    A pure function of the query point: it never consumes randomness, and
    the sign flips across hyperplanes sum(x) = k*pi/frequency.
    """

    amplitude: float = 1e-6
    frequency: float = 1e7
    stochastic: bool = field(default=False, init=False)

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise ValueError("jump amplitude must be non-negative")
        if not self.frequency > 0:
            raise ValueError("jump frequency must be positive")

    def reseed(self, seed: int, key: Sequence[int] | None = None) -> None:
        pass

    def __call__(self, x) -> float:
        s = float(np.sum(x))
        return self.amplitude * float(np.sign(math.sin(self.frequency * s)))


@dataclass
class Noisy:
    """f(x) + noise(x), forwarding ``reseed`` and ``stochastic``."""

    f: Callable
    noise: Callable

    @property
    def stochastic(self) -> bool:
        return getattr(self.noise, "stochastic", False)

    def reseed(self, seed: int, key: Sequence[int] | None = None) -> None:
        if hasattr(self.noise, "reseed"):
            self.noise.reseed(seed, key)

    def __call__(self, x) -> float:
        return float(self.f(x)) + self.noise(x)
