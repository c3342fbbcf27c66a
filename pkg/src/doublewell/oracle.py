"""Brute-force eigensolvers used as ground truth for every asymptotic claim.

Two independent routes:

* `eigensolve_fd` — central-difference tridiagonal matrix with Dirichlet ends;
  the lowest eigenpairs come from LAPACK's Sturm-sequence bisection plus
  inverse iteration (scipy.linalg.eigh_tridiagonal with index selection).
  Dirac terms load the diagonal with weight/h at their grid node.
* `numerov_shoot` — parity shooting from the origin matched to a decaying
  tail, with delta terms entering through derivative jump conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import BracketError, ConvergenceError, DoubleWellError, GridError
from .gridfn import GridFunction
from .potentials import PotentialSpec


@dataclass
class OracleResult:
    E_even: float
    E_odd: float
    psi_even: GridFunction
    psi_odd: GridFunction
    h: float
    x_max: float
    n: int
    method: str
    energies: tuple[float, ...]
    err_est: float | None = None


def _symmetric_grid(potential: PotentialSpec, x_max: float | None, n: int):
    """Symmetric grid with 0 a node and every delta position snapped to a node."""
    if x_max is None:
        x_max = potential.x_max_oracle()
    if n < 1001:
        raise GridError("oracle grid needs n >= 1001 points")
    if n % 2 == 0:
        n += 1
    offsets = sorted({abs(p) for p, _ in potential.deltas() if p != 0.0})
    if len(offsets) > 1:
        raise GridError("at most one distinct |delta position| is supported")
    h = 2.0 * x_max / (n - 1)
    if offsets:
        p = offsets[0]
        m = max(1, round(p / h))
        h = p / m
        half = math.ceil(x_max / h - 1e-12)
        x_max = half * h
        n = 2 * half + 1
    xs = np.linspace(-x_max, x_max, n)
    return xs, h, x_max, n


def _delta_loads(potential: PotentialSpec, xs: np.ndarray, h: float) -> np.ndarray:
    load = np.zeros_like(xs)
    for pos, w in potential.deltas():
        j = (pos - xs[0]) / h
        j0 = int(math.floor(j))
        frac = j - j0
        if frac < 1e-9:
            load[j0] += w / h
        elif frac > 1 - 1e-9:
            load[j0 + 1] += w / h
        else:
            # delta between nodes: split linearly
            load[j0] += (1 - frac) * w / h
            load[j0 + 1] += frac * w / h
    return load


def _normalize(xs: np.ndarray, psi: np.ndarray) -> np.ndarray:
    norm = math.sqrt(np.trapezoid(psi * psi, xs))
    psi = psi / norm
    # sign convention: positive at the rightmost antinode
    right = psi[len(psi) // 2 :]
    if right[np.argmax(np.abs(right))] < 0:
        psi = -psi
    return psi


def _parity_score(psi: np.ndarray, xs: np.ndarray) -> float:
    return float(np.trapezoid(psi * psi[::-1], xs))


def eigensolve_fd(
    potential: PotentialSpec,
    x_max: float | None = None,
    n: int = 20001,
    k: int = 4,
) -> OracleResult:
    """Lowest-k eigenpairs of -1/2 d²/dx² + V on a Dirichlet interval."""
    xs, h, x_max, n = _symmetric_grid(potential, x_max, n)
    if k > n - 2:
        raise GridError(f"cannot resolve {k} levels on {n} points")
    inner = xs[1:-1]
    diag = 1.0 / h**2 + np.asarray(potential.V(inner), dtype=float)
    diag += _delta_loads(potential, xs, h)[1:-1]
    off = np.full(n - 3, -0.5 / h**2)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))

    psis = []
    parities = []
    for i in range(k):
        psi = np.zeros(n)
        psi[1:-1] = vecs[:, i]
        psi = _normalize(xs, psi)
        psis.append(psi)
        parities.append(_parity_score(psi, xs))

    idx_even = next((i for i, s in enumerate(parities) if s > 0.5), None)
    idx_odd = next((i for i, s in enumerate(parities) if s < -0.5), None)
    if idx_even is None or idx_odd is None:
        raise ConvergenceError("could not classify even/odd ground states")
    return OracleResult(
        E_even=float(vals[idx_even]),
        E_odd=float(vals[idx_odd]),
        psi_even=GridFunction.from_linear(xs, psis[idx_even]),
        psi_odd=GridFunction.from_linear(xs, psis[idx_odd]),
        h=h,
        x_max=x_max,
        n=n,
        method="fd",
        energies=tuple(float(v) for v in vals),
    )


def eigensolve_fd_richardson(
    potential: PotentialSpec,
    x_max: float | None = None,
    n: int = 20001,
    k: int = 4,
) -> OracleResult:
    """h² Richardson extrapolation of eigensolve_fd (grids h and h/2)."""
    coarse = eigensolve_fd(potential, x_max, n, k)
    fine = eigensolve_fd(potential, coarse.x_max, 2 * coarse.n - 1, k)
    energies = tuple(
        (4.0 * ef - ec) / 3.0 for ec, ef in zip(coarse.energies, fine.energies)
    )
    err = max(abs(ef - ec) / 3.0 for ec, ef in zip(coarse.energies, fine.energies))
    E_even = (4.0 * fine.E_even - coarse.E_even) / 3.0
    E_odd = (4.0 * fine.E_odd - coarse.E_odd) / 3.0
    return OracleResult(
        E_even=E_even,
        E_odd=E_odd,
        psi_even=fine.psi_even,
        psi_odd=fine.psi_odd,
        h=fine.h,
        x_max=fine.x_max,
        n=fine.n,
        method="fd-richardson",
        energies=energies,
        err_est=err,
    )


# ---------------------------------------------------------------------------
# Numerov shooting


def _one_sided_f_derivs(Fx, x0: float, side: float, delta: float):
    """O(δ³) one-sided first/second derivatives of F just off x0."""
    f0 = Fx(x0 + 1e-12 * side)
    f1 = Fx(x0 + side * delta)
    f2 = Fx(x0 + side * 2 * delta)
    f3 = Fx(x0 + side * 3 * delta)
    d1 = side * (-11 * f0 + 18 * f1 - 9 * f2 + 2 * f3) / (6 * delta)
    d2 = (2 * f0 - 5 * f1 + 4 * f2 - f3) / delta**2
    return f0, d1, d2


def _taylor_step(Fx, x0: float, psi0: float, dpsi0: float, h: float, side: float) -> float:
    """ψ(x0 + side·h) from ψ, ψ' at x0 using ψ'' = F ψ through O(h⁴)."""
    f0, f1, f2 = _one_sided_f_derivs(Fx, x0, side, abs(h))
    s = side * h
    return (
        psi0
        + s * dpsi0
        + s**2 / 2 * f0 * psi0
        + s**3 / 6 * (f1 * side * psi0 + f0 * dpsi0)
        + s**4 / 24 * (f2 * psi0 + 2 * f1 * side * dpsi0 + f0 * f0 * psi0)
    )


def _deriv_5pt(vals, h: float) -> float:
    """Central 5-point first derivative at the middle node."""
    return (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)


_RENORM = 1e200


class _Shooter:
    """Numerov sweeps for one potential on a fixed half-line grid."""

    def __init__(self, potential: PotentialSpec, x_max: float | None, n: int,
                 match_x: float | None):
        self.potential = potential
        if x_max is None:
            x_max = potential.x_max_oracle()
        if n % 2 == 0:
            n += 1
        # snap interior delta positions onto grid nodes
        interior = sorted({p for p, _ in potential.deltas() if p > 0})
        h = x_max / (n - 1)
        if interior:
            if len(interior) > 1:
                raise GridError("at most one positive delta position supported")
            p = interior[0]
            m = max(2, round(p / h))
            h = p / m
            n = math.ceil(x_max / h) + 1
            x_max = (n - 1) * h
        self.h = h
        self.n = n
        self.x_max = x_max
        self.xs = np.linspace(0.0, x_max, n)
        self.V = np.asarray(potential.V(self.xs), dtype=float)
        self.w0 = 0.0
        self.jump: tuple[int, float] | None = None
        for pos, w in potential.deltas():
            if pos == 0.0:
                self.w0 = w
            elif pos > 0:
                self.jump = (round(pos / h), w)
        if match_x is None:
            match_x = self._default_match()
        self.j_match = min(max(int(round(match_x / h)), 4), n - 5)
        if self.jump is not None and abs(self.jump[0] - self.j_match) < 6:
            self.j_match = self.jump[0] - 8
            if self.j_match < 4:
                raise GridError("match point collides with a delta node")

    def _default_match(self) -> float:
        pot = self.potential
        minima = [m for m in pot.minima() if m >= 0]
        x0 = minima[-1] if minima else 0.25 * self.x_max
        if self.jump is not None:
            jx = self.jump[0] * self.h
            if abs(x0 - jx) < 6 * self.h:
                x0 = 0.5 * jx
        return max(x0, 8 * self.h)

    def _f_callable(self, E: float):
        pot = self.potential
        return lambda x: 2.0 * (float(pot.V(x)) - E)

    def _sweep_out(self, E: float, parity: str) -> list[float]:
        """Numerov from x=0 out to two nodes past the match point."""
        h, n = self.h, self.j_match + 3
        F = 2.0 * (self.V[:n] - E)
        Fx = self._f_callable(E)
        psi = [0.0] * n
        if parity == "even":
            psi[0] = 1.0
            dpsi0 = self.w0 * psi[0]
        else:
            psi[0] = 0.0
            dpsi0 = 1.0
        psi[1] = _taylor_step(Fx, 0.0, psi[0], dpsi0, h, +1.0)
        c = h * h / 12.0
        jump = self.jump
        Fl = F.tolist()
        for i in range(1, n - 1):
            if jump is not None and i == jump[0]:
                # derivative jump 2wψ across the delta node
                d_left = (
                    3 * psi[i] - 16 * psi[i - 1] + 36 * psi[i - 2]
                    - 48 * psi[i - 3] + 25 * psi[i - 4]
                ) / (-12 * h) if i >= 4 else (psi[i] - psi[i - 1]) / h
                d_right = d_left + 2.0 * jump[1] * psi[i]
                psi[i + 1] = _taylor_step(Fx, self.xs[i], psi[i], d_right, h, +1.0)
                continue
            psi[i + 1] = (
                2.0 * psi[i] * (1.0 + 5.0 * c * Fl[i])
                - psi[i - 1] * (1.0 - c * Fl[i - 1])
            ) / (1.0 - c * Fl[i + 1])
            if abs(psi[i + 1]) > _RENORM:
                inv = 1.0 / abs(psi[i + 1])
                for j in range(i + 2):
                    psi[j] *= inv
        return psi

    def _sweep_in(self, E: float) -> list[float]:
        """Numerov from the far Dirichlet end down to two nodes before match."""
        h = self.h
        start = self.n - 1
        stop = self.j_match - 2
        F = 2.0 * (self.V - E)
        Fl = F.tolist()
        psi = [0.0] * self.n
        kap1 = math.sqrt(max(Fl[start], 0.0)) or 1.0
        kap2 = math.sqrt(max(Fl[start - 1], 0.0)) or 1.0
        psi[start] = 1e-250
        psi[start - 1] = psi[start] * math.exp(0.5 * h * (kap1 + kap2))
        c = h * h / 12.0
        jump = self.jump
        Fx = self._f_callable(E)
        for i in range(start - 1, stop, -1):
            if jump is not None and i == jump[0]:
                d_right = (
                    -3 * psi[i] + 16 * psi[i + 1] - 36 * psi[i + 2]
                    + 48 * psi[i + 3] - 25 * psi[i + 4]
                ) / (-12 * h)
                d_left = d_right - 2.0 * jump[1] * psi[i]
                psi[i - 1] = _taylor_step(Fx, self.xs[i], psi[i], d_left, h, -1.0)
                continue
            psi[i - 1] = (
                2.0 * psi[i] * (1.0 + 5.0 * c * Fl[i])
                - psi[i + 1] * (1.0 - c * Fl[i + 1])
            ) / (1.0 - c * Fl[i - 1])
            if abs(psi[i - 1]) > _RENORM:
                inv = 1.0 / abs(psi[i - 1])
                for j in range(i - 1, self.n):
                    psi[j] *= inv
        return psi

    def discriminant(self, E: float, parity: str) -> float:
        out = self._sweep_out(E, parity)
        inn = self._sweep_in(E)
        j = self.j_match
        h = self.h
        d_out = _deriv_5pt(out[j - 2 : j + 3], h)
        d_in = _deriv_5pt(inn[j - 2 : j + 3], h)
        w = d_out * inn[j] - d_in * out[j]
        scale = abs(out[j] * inn[j]) + abs(d_out * d_in) * h + 1e-300
        return w / scale

    def assemble(self, E: float, parity: str) -> GridFunction:
        out = self._sweep_out(E, parity)
        inn = self._sweep_in(E)
        j = self.j_match
        ratio = out[j] / inn[j]
        half = np.array(out[: j + 1] + [v * ratio for v in inn[j + 1 :]])
        xs = np.concatenate([-self.xs[::-1], self.xs[1:]])
        mirrored = half[::-1] if parity == "even" else -half[::-1]
        psi = np.concatenate([mirrored, half[1:]])
        norm = math.sqrt(np.trapezoid(psi * psi, xs))
        psi /= norm
        right = psi[len(psi) // 2 :]
        if right[np.argmax(np.abs(right))] < 0:
            psi = -psi
        return GridFunction.from_linear(xs, psi)


def numerov_shoot(
    potential: PotentialSpec,
    parity: str,
    E_bracket: tuple[float, float],
    x_max: float | None = None,
    n: int = 20001,
    match_x: float | None = None,
    rel_tol: float = 1e-12,
) -> tuple[float, GridFunction]:
    """Parity eigenvalue by Numerov shooting and bisection on the bracket.

    The bracket must contain exactly one sign change of the matching
    discriminant; otherwise BracketError is raised.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    lo, hi = float(E_bracket[0]), float(E_bracket[1])
    if not lo < hi:
        raise BracketError("empty energy bracket")
    shooter = _Shooter(potential, x_max, n, match_x)

    scan = np.linspace(lo, hi, 9)
    dvals = [shooter.discriminant(E, parity) for E in scan]
    changes = [
        i for i in range(8) if dvals[i] == 0.0 or (dvals[i] * dvals[i + 1] < 0)
    ]
    if len(changes) != 1:
        raise BracketError(
            f"bracket [{lo}, {hi}] contains {len(changes)} discriminant sign "
            "changes; need exactly one"
        )
    a, b = float(scan[changes[0]]), float(scan[changes[0] + 1])
    fa = dvals[changes[0]]
    for _ in range(200):
        mid = 0.5 * (a + b)
        if b - a <= rel_tol * max(abs(mid), 1e-30):
            break
        fm = shooter.discriminant(mid, parity)
        if fm == 0.0:
            a = b = mid
            break
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    else:
        raise ConvergenceError("Numerov bisection did not converge")
    E = 0.5 * (a + b)
    return E, shooter.assemble(E, parity)


def quartic_doublet_numerov(
    potential: PotentialSpec,
    E_center: float,
    half_width: float,
    **kwargs,
) -> tuple[float, float]:
    """Convenience wrapper: (E_even, E_odd) from brackets around a center."""
    lo, hi = E_center - half_width, E_center + half_width
    e_even, _ = numerov_shoot(potential, "even", (lo, E_center), **kwargs)
    e_odd, _ = numerov_shoot(potential, "odd", (E_center, hi), **kwargs)
    if not e_even < e_odd:
        raise DoubleWellError("doublet ordering violated")
    return e_even, e_odd
