"""Registry of benchmark functions used by the experiment tables and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from chebdiff.bench.noise import DELTA_SIGMA, GaussianNoise, Noisy, SignJumpNoise
from chebdiff.local_diff import KinkSet

__all__ = [
    "TestFunction",
    "available",
    "f1",
    "f1_prime",
    "make_f2",
    "registry_lookup",
    "rosenbrock",
    "rosenbrock_grad",
]

TABLE2_NOISE = 1e-10
JUMP_AMPLITUDE = 1e-6
JUMP_FREQUENCY = 1e7


def f1(x: float) -> float:
    return x**4 if x > 0 else 0.0


def f1_prime(x: float) -> float:
    return 4.0 * x**3 if x > 0 else 0.0


def rosenbrock(x, a: float = 1.0, b: float = 100.0) -> float:
    return (a - x[0]) ** 2 + b * (x[1] - x[0] ** 2) ** 2


def rosenbrock_grad(x, a: float = 1.0, b: float = 100.0) -> np.ndarray:
    x0, x1 = float(x[0]), float(x[1])
    return np.array(
        [-2.0 * (a - x0) - 4.0 * b * x0 * (x1 - x0**2), 2.0 * b * (x1 - x0**2)]
    )


@dataclass
class TestFunction:
    name: str
    arity: int
    evaluator: Callable
    analytic_derivative: Callable | None = None
    kinks: KinkSet | None = None
    description: str = ""
    params: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    def reseed(self, seed: int, key=None) -> None:
        if hasattr(self.evaluator, "reseed"):
            self.evaluator.reseed(seed, key)


def make_f2(eps: float = TABLE2_NOISE, seed: int = 0, key: tuple[int, ...] = ()) -> TestFunction:
    """f1 plus eps * X with X ~ N(0, 1) drawn afresh at every evaluation."""
    noise = GaussianNoise(sigma=eps, seed=seed, key=key)
    return TestFunction(
        "f2",
        1,
        Noisy(f1, noise),
        f1_prime,
        KinkSet((0.0,), -1.0, 1.0),
        "f1 + eps*X, X standard normal per evaluation",
        {"eps": eps},
    )


def _abs_prime(x: float) -> float:
    return math.copysign(1.0, x) if x != 0 else 0.0


def _build(name: str, seed: int, noise_amp: float | None) -> TestFunction:
    if name == "f1":
        return TestFunction(
            "f1", 1, f1, f1_prime, KinkSet((0.0,), -1.0, 1.0), "x^4 for x > 0, else 0"
        )
    if name == "f2":
        return make_f2(TABLE2_NOISE if noise_amp is None else noise_amp, seed)
    if name == "abs":
        return TestFunction("abs", 1, abs, _abs_prime, KinkSet((0.0,), -1.0, 1.0), "|x|")
    if name == "rosenbrock":
        return TestFunction(
            "rosenbrock", 2, rosenbrock, rosenbrock_grad, None, "R_{1,100}", {"a": 1.0, "b": 100.0}
        )
    if name == "rosenbrock-delta":
        clip = JUMP_AMPLITUDE if noise_amp is None else noise_amp
        sigma = DELTA_SIGMA * clip / JUMP_AMPLITUDE
        noise = GaussianNoise(sigma=sigma, clip=clip, seed=seed)
        return TestFunction(
            name,
            2,
            Noisy(rosenbrock, noise),
            rosenbrock_grad,
            None,
            "R_{1,100} + clipped Gaussian noise per evaluation",
            {"sigma": sigma, "clip": clip},
        )
    if name == "rosenbrock-jump":
        amp = JUMP_AMPLITUDE if noise_amp is None else noise_amp
        noise = SignJumpNoise(amplitude=amp, frequency=JUMP_FREQUENCY)
        return TestFunction(
            name,
            2,
            Noisy(rosenbrock, noise),
            rosenbrock_grad,
            None,
            "R_{1,100} + amp*sgn(sin(w*(x0+x1)))",
            {"amplitude": amp, "frequency": JUMP_FREQUENCY},
        )
    raise KeyError(name)


_NAMES = ("f1", "f2", "abs", "rosenbrock", "rosenbrock-delta", "rosenbrock-jump")


def available() -> tuple[str, ...]:
    return _NAMES


def registry_lookup(name: str, *, seed: int = 0, noise_amp: float | None = None) -> TestFunction:
    """Fresh instance of a registered function.

    ``noise_amp`` overrides the default disturbance size of the noisy
    entries (eps for f2, the clip/jump amplitude for the Rosenbrock
    variants). Unknown names raise ``KeyError`` listing what exists.
    """
    if name not in _NAMES:
        raise KeyError(f"unknown function {name!r}; available: {', '.join(_NAMES)}")
    return _build(name, seed, noise_amp)
