"""Grid-sampled functions with optional logarithmic storage.

One-sided double-well solutions span hundreds of orders of magnitude, so grid
functions can store -log|f| plus a sign channel instead of linear values.
The signed log-space helpers here (products, sums, cumulative trapezoids)
keep every intermediate in that representation; linear floats appear only at
the caller's request and overflow to ±inf harmlessly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEG_INF = float("-inf")


@dataclass
class GridFunction:
    """Function sampled on a strictly increasing grid.

    When log_scale is set, values holds -log|f| and signs the sign of f
    (0 marks an exact zero).  Otherwise values holds f itself.
    """

    xs: np.ndarray
    values: np.ndarray
    log_scale: bool = False
    signs: np.ndarray | None = None

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.xs.shape != self.values.shape:
            raise ValueError("grid and value arrays must have matching shape")
        if np.any(np.diff(self.xs) <= 0):
            raise ValueError("grid must be strictly increasing")
        if self.log_scale and self.signs is None:
            self.signs = np.ones_like(self.values)

    @staticmethod
    def from_linear(xs, values) -> "GridFunction":
        return GridFunction(np.asarray(xs, float), np.asarray(values, float))

    @staticmethod
    def from_log(xs, log_abs, signs) -> "GridFunction":
        return GridFunction(
            np.asarray(xs, float),
            -np.asarray(log_abs, float),
            log_scale=True,
            signs=np.asarray(signs, float),
        )

    def log_abs(self) -> np.ndarray:
        """log|f| per grid point (-inf at zeros)."""
        if self.log_scale:
            return -self.values
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.values))

    def sign(self) -> np.ndarray:
        if self.log_scale:
            return np.asarray(self.signs)
        return np.sign(self.values)

    def linear(self) -> np.ndarray:
        """Linear values; overflows saturate to ±inf."""
        if not self.log_scale:
            return self.values
        with np.errstate(over="ignore"):
            return self.signs * np.exp(-self.values)

    def __len__(self) -> int:
        return len(self.xs)


def log_mul(l1: float, s1: float, l2: float, s2: float) -> tuple[float, float]:
    """Product of two signed log-space numbers."""
    if s1 == 0 or s2 == 0:
        return NEG_INF, 0.0
    return l1 + l2, s1 * s2


def log_add(l1: float, s1: float, l2: float, s2: float) -> tuple[float, float]:
    """Sum of two signed log-space numbers."""
    if s1 == 0:
        return l2, s2
    if s2 == 0:
        return l1, s1
    if l1 < l2:
        l1, s1, l2, s2 = l2, s2, l1, s1
    r = s1 + s2 * math.exp(l2 - l1)
    if r == 0.0:
        return NEG_INF, 0.0
    return l1 + math.log(abs(r)), math.copysign(1.0, r)


def log_sum_signed(logs: np.ndarray, signs: np.ndarray) -> tuple[float, float]:
    """Signed log-space sum of an array of signed log-space numbers."""
    logs = np.asarray(logs, float)
    signs = np.asarray(signs, float)
    mask = signs != 0
    if not np.any(mask):
        return NEG_INF, 0.0
    m = float(np.max(logs[mask]))
    acc = float(np.sum(signs[mask] * np.exp(logs[mask] - m)))
    if acc == 0.0:
        return NEG_INF, 0.0
    return m + math.log(abs(acc)), math.copysign(1.0, acc)


def to_linear(log_val: float, sign: float) -> float:
    if sign == 0.0:
        return 0.0
    try:
        return sign * math.exp(log_val)
    except OverflowError:
        return sign * math.inf


def suffix_cumtrapz_log(
    xs: np.ndarray, log_u: np.ndarray, signs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative trapezoid of a signed log-space integrand from the right.

    Returns (log|I|, sign I) with I[i] = ∫_{xs[i]}^{xs[-1]} u dy.
    """
    n = len(xs)
    out_log = np.full(n, NEG_INF)
    out_sgn = np.zeros(n)
    acc_l, acc_s = NEG_INF, 0.0
    for i in range(n - 2, -1, -1):
        h = xs[i + 1] - xs[i]
        lm = max(log_u[i], log_u[i + 1])
        if lm == NEG_INF:
            seg_l, seg_s = NEG_INF, 0.0
        else:
            seg = 0.5 * h * (
                signs[i] * math.exp(log_u[i] - lm)
                + signs[i + 1] * math.exp(log_u[i + 1] - lm)
            )
            if seg == 0.0:
                seg_l, seg_s = NEG_INF, 0.0
            else:
                seg_l = lm + math.log(abs(seg))
                seg_s = math.copysign(1.0, seg)
        acc_l, acc_s = log_add(acc_l, acc_s, seg_l, seg_s)
        out_log[i] = acc_l
        out_sgn[i] = acc_s
    return out_log, out_sgn


def trapz_log(xs: np.ndarray, log_u: np.ndarray, signs: np.ndarray) -> tuple[float, float]:
    """Full-interval trapezoid of a signed log-space integrand."""
    lo, sg = suffix_cumtrapz_log(np.asarray(xs, float), np.asarray(log_u, float),
                                 np.asarray(signs, float))
    return float(lo[0]), float(sg[0])
