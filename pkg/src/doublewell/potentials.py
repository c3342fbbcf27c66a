"""Potential families used across the package.

Each family is a small frozen dataclass exposing the same duck-typed surface:

    V(x)          smooth part of the potential (vectorized)
    deltas()      tuple of (position, weight) Dirac terms, V ⊃ weight·δ(x-pos)
    minima()      positions where the full potential vanishes
    scale_g       the g in V = g², v used by the Hamilton-Jacobi scaling

`harmonic(g)` is the degenerate single-well fixture (a harmonic-plus-delta
with l=0 and zero delta strength).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DoubleWellError


@dataclass(frozen=True)
class Quartic:
    """V(x) = (1/2) g^2 (x^2 - a^2)^2, degenerate minima at ±a."""

    g: float
    a: float

    def __post_init__(self):
        if self.g <= 0 or self.a <= 0:
            raise ValueError("quartic potential requires g > 0 and a > 0")

    @property
    def scale_g(self) -> float:
        return self.g

    def V(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.g**2 * (x * x - self.a**2) ** 2

    def v(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (x * x - self.a**2) ** 2

    def sqrt_2V(self, x):
        x = np.asarray(x, dtype=float)
        return self.g * np.abs(x * x - self.a**2)

    def deltas(self) -> tuple[tuple[float, float], ...]:
        return ()

    def minima(self) -> tuple[float, ...]:
        return (-self.a, self.a)

    def theta_tail(self, E: float, x: float) -> float:
        # Decaying-solution tail of the log-derivative residual at large x.
        return 1.0 / x - E / (self.g * x * x) + self.a**2 / x**3

    def barrier_exponent(self) -> float:
        """The tunneling exponent (4/3) g a^3."""
        return 4.0 * self.g * self.a**3 / 3.0

    def epsilon(self) -> float:
        return float(np.exp(-self.barrier_exponent()))

    def x_max_phi(self) -> float:
        return 3.0 * self.a + 10.0 / np.sqrt(self.g * self.a)

    def x_max_oracle(self, tail_log: float = 40.0) -> float:
        # Smallest x with g*S0(x) beyond the requested tail bound.
        from scipy.optimize import brentq

        f = lambda x: self.g * (x - self.a) ** 2 * (x + 2 * self.a) / 3.0 - tail_log
        hi = self.a + 2.0
        while f(hi) < 0:
            hi *= 2.0
        return float(brentq(f, self.a, hi))


@dataclass(frozen=True)
class TripleDelta:
    """V(x) = u[-δ(x-l) - δ(x+l) + q δ(x)] with q ≤ 1."""

    u: float
    q: float
    l: float

    def __post_init__(self):
        if self.u <= 0 or self.l <= 0:
            raise ValueError("triple-delta potential requires u > 0 and l > 0")
        if not (0 < self.q <= 1):
            raise ValueError("barrier ratio q must lie in (0, 1]")

    @property
    def scale_g(self) -> float:
        return self.u

    def V(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def deltas(self) -> tuple[tuple[float, float], ...]:
        return ((-self.l, -self.u), (0.0, self.q * self.u), (self.l, -self.u))

    def minima(self) -> tuple[float, ...]:
        return (-self.l, self.l)

    def x_max_oracle(self, tail_log: float = 40.0) -> float:
        return self.l + tail_log / self.u


@dataclass(frozen=True)
class HarmonicDelta:
    """Shifted harmonic wells joined at the origin plus a delta barrier.

    V(x) = (1/2) g^2 (x-l)^2 for x > 0, (1/2) g^2 (x+l)^2 for x < 0,
    plus strength·δ(x).  With l = 0 and zero strength this degenerates to the
    plain harmonic oscillator fixture.
    """

    g: float
    l: float
    strength: float

    def __post_init__(self):
        if self.g <= 0 or self.l < 0:
            raise ValueError("harmonic-delta potential requires g > 0 and l >= 0")

    @property
    def scale_g(self) -> float:
        return self.g

    def V(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.g**2 * (np.abs(x) - self.l) ** 2

    def v(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (np.abs(x) - self.l) ** 2

    def sqrt_2V(self, x):
        x = np.asarray(x, dtype=float)
        return self.g * np.abs(np.abs(x) - self.l)

    def deltas(self) -> tuple[tuple[float, float], ...]:
        if self.strength == 0.0:
            return ()
        return ((0.0, self.strength),)

    def minima(self) -> tuple[float, ...]:
        if self.l == 0:
            return (0.0,)
        return (-self.l, self.l)

    def theta_tail(self, E: float, x: float) -> float:
        # Marginal n=2 growth: the tail keeps an E-sensitive 1/x term.
        return (0.5 - E / self.g) / (x - self.l)

    def x_max_phi(self) -> float:
        return self.l + np.sqrt(90.0 / self.g) + 2.0

    def x_max_oracle(self, tail_log: float = 40.0) -> float:
        return self.l + np.sqrt(2.0 * tail_log / self.g) + 1.0


def harmonic(g: float) -> HarmonicDelta:
    """Single harmonic well fixture V = (1/2) g^2 x^2."""
    return HarmonicDelta(g=g, l=0.0, strength=0.0)


@dataclass(frozen=True)
class Tabulated:
    """Cubic-spline potential from samples of V >= 0 (delta-free)."""

    xs: tuple[float, ...]
    Vs: tuple[float, ...]
    g: float = 1.0

    def __post_init__(self):
        if len(self.xs) != len(self.Vs) or len(self.xs) < 4:
            raise ValueError("tabulated potential needs >= 4 matching samples")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("tabulated abscissae must be strictly increasing")

    @property
    def scale_g(self) -> float:
        return self.g

    def _spline(self):
        from scipy.interpolate import CubicSpline

        return CubicSpline(np.asarray(self.xs), np.asarray(self.Vs))

    def V(self, x):
        return self._spline()(np.asarray(x, dtype=float))

    def v(self, x):
        return self.V(x) / self.g**2

    def deltas(self) -> tuple[tuple[float, float], ...]:
        return ()

    def minima(self) -> tuple[float, ...]:
        vs = np.asarray(self.Vs)
        idx = np.where(np.isclose(vs, 0.0, atol=1e-12 * max(1.0, vs.max())))[0]
        if len(idx) == 0:
            raise DoubleWellError("tabulated potential has no vanishing minimum")
        return tuple(float(self.xs[i]) for i in idx)

    def x_max_oracle(self, tail_log: float = 40.0) -> float:
        return float(max(abs(self.xs[0]), abs(self.xs[-1])))


PotentialSpec = Union[Quartic, TripleDelta, HarmonicDelta, Tabulated]
