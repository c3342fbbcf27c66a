"""Exact rational-function arithmetic.

Everything in this module is exact: coefficients are `fractions.Fraction`
(arbitrary precision, always reduced, denominator >= 1), polynomials carry no
trailing zero coefficients, and rational functions are kept in canonical form
(num/den coprime, den monic).  No floating point enters any computation here;
floats appear only on explicit `*_float` evaluation paths.

Antidifferentiation is supported for rational functions whose denominators
split into linear factors over the rationals; anything else raises
`UnsupportedPoleError` instead of approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import AlgebraError, PoleError, UnsupportedPoleError

Rational = Fraction
RationalLike = Union[int, Fraction]


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial; coeffs[k] is the coefficient of x**k.

    The zero polynomial is the empty tuple; otherwise the last entry is
    nonzero.  Instances are immutable and hashable.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Iterable[RationalLike]) -> "Poly":
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def const(value: RationalLike) -> "Poly":
        return Poly.make([value])

    @staticmethod
    def x() -> "Poly":
        return Poly.make([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero():
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly.make(a)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.make(out)

    def scale(self, value: RationalLike) -> "Poly":
        v = _frac(value)
        if v == 0:
            return Poly(())
        return Poly(tuple(c * v for c in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise AlgebraError("negative polynomial power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise AlgebraError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        dlead = other.leading()
        dn = other.degree
        while len(r) - 1 >= dn and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < dn:
                break
            k = len(r) - 1 - dn
            c = r[-1] / dlead
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                r[k + i] -= c * oc
        return Poly.make(q), Poly.make(r)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise AlgebraError("inexact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly.make([c * k for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly.make([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def evaluate(self, x: RationalLike) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose_neg(self) -> "Poly":
        """Substitute x -> -x."""
        return Poly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        # Plain Euclid over Q; degrees stay small enough that coefficient
        # growth is harmless.
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def _rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots of p with multiplicities.

    Returns [] for constants.  The residual factor after deflation may still
    have positive degree (irrational/complex roots); callers decide whether
    that is an error.
    """
    roots: list[tuple[Fraction, int]] = []
    work = p
    while work.degree >= 1:
        root = _find_one_rational_root(work)
        if root is None:
            break
        mult = 0
        lin = Poly.make([-root, 1])
        while True:
            q, r = work.divmod(lin)
            if not r.is_zero():
                break
            work = q
            mult += 1
        roots.append((root, mult))
    return roots


def _find_one_rational_root(p: Poly) -> Fraction | None:
    # Clear denominators, then apply the rational root theorem to the
    # primitive integer polynomial.
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coeffs]
    if ints and ints[0] == 0:
        return Fraction(0)
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    a0, an = ints[0], ints[-1]

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    for q in divisors(an):
        for pnum in divisors(a0):
            for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                if p.evaluate(cand) == 0:
                    return cand
    return None


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RatFunc:
    """Quotient of polynomials in canonical form: gcd(num, den)=1, den monic."""

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise AlgebraError("rational function with zero denominator")
        if num.is_zero():
            return RatFunc(Poly(()), Poly.const(1))
        g = Poly.gcd(num, den)
        if g.degree >= 1:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.leading()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        return RatFunc(num, den)

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc.make(p, Poly.const(1))

    @staticmethod
    def const(value: RationalLike) -> "RatFunc":
        return RatFunc.from_poly(Poly.const(value))

    @staticmethod
    def x() -> "RatFunc":
        return RatFunc.from_poly(Poly.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise AlgebraError("division by the zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def scale(self, value: RationalLike) -> "RatFunc":
        return RatFunc.make(self.num.scale(value), self.den)

    def derivative(self) -> "RatFunc":
        # Quotient rule, then reduce.
        n, d = self.num, self.den
        return RatFunc.make(n.derivative() * d - n * d.derivative(), d * d)

    def evaluate(self, x: RationalLike) -> Fraction:
        x = _frac(x)
        dv = self.den.evaluate(x)
        if dv == 0:
            raise PoleError(f"evaluation at pole x = {x}")
        return self.num.evaluate(x) / dv

    def evaluate_float(self, x: float) -> float:
        return self.num.evaluate_float(x) / self.den.evaluate_float(x)

    def compose_neg(self) -> "RatFunc":
        return RatFunc.make(self.num.compose_neg(), self.den.compose_neg())

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def ratfunc_arith(lhs: RatFunc, rhs: RatFunc, kind: str) -> RatFunc:
    """Dispatch wrapper used by table-driven tests and the CLI."""
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "div":
        return lhs / rhs
    raise ValueError(f"unknown arithmetic kind {kind!r}")


# ---------------------------------------------------------------------------
# antiderivatives with explicit logarithmic parts


@dataclass(frozen=True)
class LogTerm:
    """coefficient * ln(x - root)."""

    coefficient: Fraction
    root: Fraction


@dataclass(frozen=True)
class Antiderivative:
    """Exact antiderivative: rational part, log terms, anchored constant.

    The represented function is

        value(x) = rational_part(x) + constant
                   + sum_i c_i * ln((x - r_i) / (anchor_x - r_i))

    so the constant stays rational even when log terms are present, and
    value(anchor_x) = constant + rational_part(anchor_x) is exact.
    """

    rational_part: RatFunc
    log_parts: tuple[LogTerm, ...]
    constant: Fraction
    anchor_x: Fraction

    def derivative(self) -> RatFunc:
        out = self.rational_part.derivative()
        for term in self.log_parts:
            out = out + RatFunc.make(
                Poly.const(term.coefficient), Poly.make([-term.root, 1])
            )
        return out

    def has_logs(self) -> bool:
        return bool(self.log_parts)

    def as_ratfunc(self) -> RatFunc:
        if self.log_parts:
            raise AlgebraError("antiderivative has logarithmic parts")
        return self.rational_part + RatFunc.const(self.constant)

    def value(self, x: RationalLike) -> Fraction:
        if self.log_parts:
            raise AlgebraError("exact evaluation with logarithmic parts; use value_float")
        return self.rational_part.evaluate(x) + self.constant

    def value_float(self, x: float) -> float:
        out = self.rational_part.evaluate_float(x) + float(self.constant)
        for term in self.log_parts:
            out += float(term.coefficient) * math.log(
                abs((x - float(term.root)) / float(self.anchor_x - term.root))
            )
        return out

    def __str__(self) -> str:
        parts = []
        body = self.rational_part + RatFunc.const(self.constant)
        if not body.is_zero() or not self.log_parts:
            parts.append(str(body))
        for term in self.log_parts:
            arg_num = Poly.make([-term.root, 1])
            arg_den = self.anchor_x - term.root
            arg = f"({arg_num})" if arg_den == 1 else f"({arg_num})/({arg_den})"
            if term.coefficient == 1:
                parts.append(f"ln{arg}")
            else:
                parts.append(f"{term.coefficient}*ln{arg}")
        return " + ".join(parts)


def antiderivative(
    f: RatFunc, anchor_x: RationalLike, anchor_value: RationalLike
) -> Antiderivative:
    """Exact antiderivative of f anchored so value(anchor_x) = anchor_value.

    Requires every pole of f to be rational; raises UnsupportedPoleError
    otherwise.  anchor_x must not be a pole of the rational part nor a log
    root.
    """
    anchor_x = _frac(anchor_x)
    anchor_value = _frac(anchor_value)

    poly_part, rem = f.num.divmod(f.den)
    rational = RatFunc.from_poly(poly_part.antiderivative())
    logs: dict[Fraction, Fraction] = {}

    # Peel partial fractions one top-order pole term at a time.
    cur = RatFunc.make(rem, f.den)
    while not cur.is_zero() and cur.den.degree >= 1:
        roots = _rational_roots(cur.den)
        covered = sum(m for _, m in roots)
        if covered != cur.den.degree:
            raise UnsupportedPoleError(
                f"denominator factor without rational roots: {cur.den}"
            )
        root, mult = roots[0]
        lin = Poly.make([-root, 1])
        rest = cur.den.exact_div(lin ** mult)
        coeff = cur.num.evaluate(root) / rest.evaluate(root)
        if mult == 1:
            if coeff != 0:
                logs[root] = logs.get(root, Fraction(0)) + coeff
        else:
            # d/dx [ -A / ((m-1) (x-r)^(m-1)) ] = A / (x-r)^m
            rational = rational + RatFunc.make(
                Poly.const(-coeff / (mult - 1)), lin ** (mult - 1)
            )
        cur = cur - RatFunc.make(Poly.const(coeff), lin ** mult)

    log_terms = tuple(
        LogTerm(c, r) for r, c in sorted(logs.items()) if c != 0
    )
    for term in log_terms:
        if anchor_x == term.root:
            raise PoleError("anchor point coincides with a logarithmic singularity")
    constant = anchor_value - rational.evaluate(anchor_x)
    return Antiderivative(rational, log_terms, constant, anchor_x)


# ---------------------------------------------------------------------------
# exact truncated power series (used for the Wronskian-series bookkeeping)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series over Fraction; coeffs[k] multiplies t**k.

    The length fixes the truncation order; arithmetic keeps the shorter
    operand's order.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Sequence[RationalLike]) -> "PowerSeries":
        return PowerSeries(tuple(_frac(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return PowerSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n - i):
                out[i + j] += a * other.coeffs[j]
        return PowerSeries(tuple(out))

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term."""
        if self.coeffs and self.coeffs[0] != 0:
            raise AlgebraError("series exp requires zero constant term")
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        if n == 0:
            return PowerSeries(())
        out[0] = Fraction(1)
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += j * self.coeffs[j] * out[k - j]
            out[k] = acc / k
        return PowerSeries(tuple(out))
