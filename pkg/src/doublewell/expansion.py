"""Order-by-order asymptotic expansion of the double-well wave exponent.

Writing the wavefunction as exp(-S) with S = g·S0 + S1 + g^{-1}·S2 + ... turns
the Schroedinger equation into a triangular recursion

    S0'^2 = 2 v,
    S0'·Sn' = (1/2) S_{n-1}'' - (1/2) Σ_{m=1}^{n-1} Sm'·S_{n-m}' - E_{n-1},

where each E_{n-1} is fixed by demanding Sn' stay finite at the expansion
anchor (the wavefunction's main peak).  For the quartic well everything stays
inside exact rational-function arithmetic; the recursion is run at a = 1 and
physical values recovered from the (g a^3) scaling.

Also provided: the numeric least-action integral for arbitrary nonnegative
potentials and the closed-form kinked actions whose derivative flips magnitude
at the remote minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .algebra import Antiderivative, Poly, PowerSeries, RatFunc, antiderivative
from .errors import AlgebraError, DoubleWellError
from .potentials import PotentialSpec


@dataclass(frozen=True)
class HJExpansion:
    """Exact expansion data at unit well separation (a = 1)."""

    order: int
    branch: str  # "+" or "-"
    s_prime: tuple[RatFunc, ...]
    s: tuple[Antiderivative, ...]
    energies: tuple[Fraction, ...]
    scale: str = "a=1"


@dataclass(frozen=True)
class EnergySeries:
    """E = Σ_m coeff_m · g^(1-m) a^(1-3m); terms are (m, coeff)."""

    terms: tuple[tuple[int, Fraction], ...]

    def evaluate(self, g: float, a: float, order: int | None = None) -> float:
        total = 0.0
        for m, c in self.terms:
            if order is not None and m > order:
                break
            total += float(c) * g ** (1 - m) * a ** (1 - 3 * m)
        return total


@dataclass(frozen=True)
class LambdaSeries:
    """Wronskian asymptotics: prefactor · Σ_m coeff_m (g a^3)^(-m)."""

    prefactor: str
    terms: tuple[tuple[int, Fraction], ...]

    def evaluate(self, g: float, a: float, order: int | None = None) -> float:
        acc = 0.0
        for m, c in self.terms:
            if order is not None and m > order:
                break
            acc += float(c) * (g * a**3) ** (-m)
        pref = 8.0 * g * a**2 * math.exp(-4.0 * g * a**3 / 3.0)
        return pref * acc


LAMBDA_PREFACTOR = "8*g*a^2*exp(-(4/3)*g*a^3)"


def _run_recursion(
    s0_prime: RatFunc, anchor: Fraction, n_orders: int
) -> tuple[list[RatFunc], list[Fraction]]:
    s_prime = [s0_prime]
    energies: list[Fraction] = []
    half = Fraction(1, 2)
    for n in range(1, n_orders + 1):
        rhs = s_prime[n - 1].derivative().scale(half)
        for m in range(1, n):
            rhs = rhs - (s_prime[m] * s_prime[n - m]).scale(half)
        energy = rhs.evaluate(anchor)  # regularity at the anchor fixes E
        energies.append(energy)
        nxt = (rhs - RatFunc.const(energy)) / s0_prime
        if nxt.den.evaluate(anchor) == 0:
            raise AlgebraError(
                f"recursion order {n}: derivative not regular at the anchor"
            )
        s_prime.append(nxt)
    return s_prime, energies


def expand_quartic(n_orders: int, branch: str = "+") -> HJExpansion:
    """Run the quartic recursion to the requested order at a = 1."""
    if n_orders < 0:
        raise ValueError("expansion order must be >= 0")
    if branch not in ("+", "-"):
        raise ValueError("branch must be '+' or '-'")
    base = RatFunc.from_poly(Poly.make([-1, 0, 1]))  # x^2 - 1
    if branch == "+":
        s0_prime, anchor = base, Fraction(1)
    else:
        s0_prime, anchor = -base, Fraction(-1)
    s_prime, energies = _run_recursion(s0_prime, anchor, n_orders)
    s = tuple(antiderivative(sp, anchor, 0) for sp in s_prime)
    return HJExpansion(n_orders, branch, tuple(s_prime), s, tuple(energies))


def expand_harmonic(n_orders: int) -> HJExpansion:
    """Single-well fixture V = (1/2) g^2 x^2; terminates after one order."""
    if n_orders < 0:
        raise ValueError("expansion order must be >= 0")
    s_prime, energies = _run_recursion(RatFunc.x(), Fraction(0), n_orders)
    s = tuple(antiderivative(sp, Fraction(0), 0) for sp in s_prime)
    return HJExpansion(n_orders, "+", tuple(s_prime), s, tuple(energies))


def energy_series(exp: HJExpansion) -> EnergySeries:
    return EnergySeries(tuple(enumerate(exp.energies)))


def lambda_series(
    exp_plus: HJExpansion, exp_minus: HJExpansion, n_terms: int
) -> LambdaSeries:
    """Wronskian series from the two branch expansions, evaluated at x = 0.

    The Wronskian of the two one-sided solutions equals
    (S(-)' - S(+)') · exp(-S(+) - S(-)); at the barrier center every
    expansion coefficient is an exact rational, the m=1 logarithms
    exponentiate to the rational factor 4a^2, and the remaining exponential
    is expanded as a formal series.
    """
    avail = min(exp_plus.order, exp_minus.order)
    if n_terms > avail - 1:
        raise DoubleWellError(
            f"lambda series to m={n_terms} needs expansion order >= {n_terms + 1}"
        )
    zero = Fraction(0)
    n_series = n_terms + 1

    # (S(-)' - S(+)')(0) = g Σ d_m g^{-m}
    d = [
        exp_minus.s_prime[m].evaluate(zero) - exp_plus.s_prime[m].evaluate(zero)
        for m in range(avail + 1)
    ]
    if d[0] != 2:
        raise AlgebraError("unexpected leading Wronskian slope; not the a=1 quartic")
    ratio = PowerSeries.make([dm / d[0] for dm in d[: n_series]])

    # exp(-S(+) - S(-)) at x = 0: m=0 gives the tunneling exponential, the
    # m=1 logarithms give a rational factor, m >= 2 feed a formal exponential.
    log_factor = Fraction(1)
    for expn in (exp_plus, exp_minus):
        if expn.order >= 1:
            srl = expn.s[1]
            if srl.constant + srl.rational_part.evaluate(zero) != 0:
                raise AlgebraError("m=1 term has a non-logarithmic part at x=0")
            for term in srl.log_parts:
                if term.coefficient.denominator != 1:
                    raise AlgebraError("non-integer logarithm coefficient")
                arg = (zero - term.root) / (srl.anchor_x - term.root)
                log_factor *= arg ** (-term.coefficient)
    if log_factor != 4:
        raise AlgebraError("unexpected logarithmic prefactor; not the a=1 quartic")

    exponent = [zero] * n_series
    for m in range(2, avail + 1):
        if m - 1 >= n_series:
            break
        for expn in (exp_plus, exp_minus):
            term = expn.s[m]
            if term.has_logs():
                raise AlgebraError(f"unexpected logarithm at order m={m}")
            exponent[m - 1] -= term.value(zero)
    series = ratio * PowerSeries.make(exponent).exp()
    if series.coeffs[0] != 1:
        raise AlgebraError("lambda series must start at exactly 1")
    return LambdaSeries(LAMBDA_PREFACTOR, tuple(enumerate(series.coeffs)))


def hj_action_numeric(
    potential: PotentialSpec,
    minimum_index: int,
    x: float,
    rel_tol: float = 1e-12,
) -> float:
    """Least-action integral ∫ sqrt(2 v) from the chosen minimum to x.

    The sign is fixed so the result is nonnegative everywhere, which is the
    trial-wavefunction (kinked) branch.  Raises if the potential goes
    negative anywhere sampled.
    """
    minima = potential.minima()
    if not 0 <= minimum_index < len(minima):
        raise ValueError(f"minimum_index out of range 0..{len(minima) - 1}")
    lj = minima[minimum_index]
    if x == lj:
        return 0.0

    gsq = potential.scale_g**2

    def integrand(y: float) -> float:
        V = float(potential.V(y))
        if V < -1e-12 * gsq:
            raise DoubleWellError(f"potential negative at x = {y}")
        return math.sqrt(2.0 * max(V, 0.0) / gsq)

    lo, hi = (lj, x) if x > lj else (x, lj)
    interior = [m for m in minima if lo < m < hi]
    val, _ = quad(integrand, lo, hi, epsabs=0.0, epsrel=rel_tol,
                  points=interior or None, limit=200)
    return abs(val)


def kinked_action(branch: str, x: float, a: float) -> float:
    """Piecewise cubic action with a derivative kink at the remote minimum.

    Branch '+' anchors at +a and crosses over at -a with offset 4a^3/3; the
    '-' branch is its mirror image.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if branch == "-":
        return kinked_action("+", -x, a)
    if branch != "+":
        raise ValueError("branch must be '+' or '-'")
    if x >= -a:
        return (x - a) ** 2 * (x + 2 * a) / 3.0
    return 4.0 * a**3 / 3.0 + (x + a) ** 2 * (2 * a - x) / 3.0


def quartic_action_plus(x: float, a: float) -> float:
    """Analytic branch S0(+) = (x-a)^2 (x+2a)/3 (no kink; negative below -2a)."""
    return (x - a) ** 2 * (x + 2 * a) / 3.0


def s_prime_float(exp: HJExpansion, g: float, a: float, x: float, order: int | None = None) -> float:
    """S'(x) for the physical (g, a) from the a=1 expansion.

    Uses S_m'(x; a) = a^(2-3m) S_m'(x/a; 1), so the g^{1-m} weights combine to
    (g a^3)^{1-m} / a · S_m'(x/a; 1) · a^2 ... assembled termwise below.
    """
    if order is None:
        order = exp.order
    xi = x / a
    total = 0.0
    for m in range(min(order, exp.order) + 1):
        total += g ** (1 - m) * a ** (2 - 3 * m) * exp.s_prime[m].evaluate_float(xi)
    return total


def s_value_float(exp: HJExpansion, g: float, a: float, x: float, order: int | None = None) -> float:
    """S(x) for the physical (g, a) from the a=1 expansion."""
    if order is None:
        order = exp.order
    xi = x / a
    total = 0.0
    for m in range(min(order, exp.order) + 1):
        total += g ** (1 - m) * a ** (3 - 3 * m) * exp.s[m].value_float(xi)
    return total
