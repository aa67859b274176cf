"""Matrix elements of position and momentum on the Morse basis, and the
time-dependent expectations, dispersions and phase-space trajectories of a
squeezed state.

The closed forms for ``x``, ``p`` and ``p**2`` hold for ``beta = 1``; for
other ``beta`` the length scale ``1/beta`` is applied afterwards.  ``x**2``
has no closed form and is integrated numerically.  In ``y = nu e^{-beta x}``
the integrand carries ``ln(nu/y)**2`` against a weight ``y**(eps_m+eps_n-1)``
whose exponent is close to zero for the top levels, and Gauss-Laguerre rules
converge only algebraically there.  In ``x`` the same integrand is smooth and
decays on both sides, so the trapezoid rule converges geometrically.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AccuracyError, ConfigurationError, QuadratureError
from .morse import ModelParams, basis_values, energies, log_norm_const
from .specfun import digamma, log_gamma
from .states import SqueezedState

VARIANCE_CLAMP = 1e-10
X2_RTOL = 1e-8


class Observable(enum.Enum):
    X = "x"
    P = "p"
    P2 = "p2"
    X2 = "x2"


SYMMETRY = {Observable.X: "symmetric", Observable.P: "skewsymmetric",
            Observable.P2: "symmetric", Observable.X2: "symmetric"}


def alpha_frequency(params: ModelParams, n: int, k: int) -> float:
    """Bohr frequency ``alpha(n, k) = (hbar beta^2 / 2 m_r) k (2(p - n) - k)``."""
    return params.hbar * params.beta ** 2 / (2.0 * params.m_r) * k * (2.0 * (params.p - n) - k)


def _check_pair(params: ModelParams, n: int, k: int) -> None:
    if n < 0 or k < 0 or n + k > params.n_max:
        raise IndexError(f"(n={n}, k={k}) outside the bound basis 0..{params.n_max}")


def _log_common(params: ModelParams, n, k):
    """ln of ``N_{n+k} N_n Gamma(nu - k - n) / n!`` with beta = 1 constants."""
    n = np.asarray(n)
    k = np.asarray(k)
    half_log_beta = 0.5 * math.log(params.beta)
    ln_n = np.vectorize(lambda j: log_norm_const(params, int(j)) - half_log_beta, otypes=[float])
    return ln_n(n + k) + ln_n(n) + log_gamma(params.nu - k - n) - log_gamma(n + 1.0)


def _x_diag(params: ModelParams, n: int) -> float:
    nu = params.nu
    tail = sum(1.0 / (nu - n - j) for j in range(1, n + 1))
    return (math.log(nu) - digamma(nu - 1.0 - 2 * n) + tail) / params.beta


def _offdiag(params: ModelParams, obs: Observable, n, k):
    """Vectorized off-diagonal ``<n+k|obs|n>`` (``k >= 1``; real factor only for P)."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    sign = np.where(k % 2 == 1, 1.0, -1.0)          # (-1)^(k+1)
    common = sign * np.exp(_log_common(params, n.astype(int), k.astype(int)))
    nu, hb, b = params.nu, params.hbar, params.beta
    if obs is Observable.X:
        return common / (k * (nu - k - 1 - 2 * n)) / b
    if obs is Observable.P:
        return hb * common / 2.0 * b
    if obs is Observable.P2:
        return hb ** 2 * common / 4.0 * ((k - 1) * nu - k * (k + 2 * n + 1)) * b ** 2
    raise ValueError(f"no closed form for {obs}")


def x_elem(params: ModelParams, n: int, k: int) -> float:
    """``<psi_{n+k}| x |psi_n>`` from the closed form."""
    _check_pair(params, n, k)
    if k == 0:
        return _x_diag(params, n)
    return float(_offdiag(params, Observable.X, n, k))


def p_elem(params: ModelParams, n: int, k: int) -> complex:
    """``<psi_{n+k}| p |psi_n>``, purely imaginary; zero on the diagonal."""
    _check_pair(params, n, k)
    if k == 0:
        return 0j
    return 1j * float(_offdiag(params, Observable.P, n, k))


def p2_elem(params: ModelParams, n: int, k: int) -> float:
    """``<psi_{n+k}| p^2 |psi_n>`` from the closed form."""
    _check_pair(params, n, k)
    if k == 0:
        return -params.hbar ** 2 * (2 * n + 1) * (2 * n + 1 - params.nu) / 4.0 * params.beta ** 2
    return float(_offdiag(params, Observable.P2, n, k))


# -- x^2 by trapezoid quadrature in x -------------------------------------

def x2_grid(params: ModelParams, size: int, n_intervals: int | None = None) -> np.ndarray:
    """Uniform grid in ``x`` covering the support of ``psi_0 .. psi_{size-1}``.

    Left end: ``y = nu e^{-beta x}`` beyond the outermost classical turning
    point (~``4p``) plus a decay margin.  Right end: ``psi_m psi_n`` decays
    like ``exp(-beta (eps_m + eps_n) x)``, so the smallest ``eps`` fixes it.
    The default spacing ``min(2 / nu, 0.05) / beta`` resolves the fastest
    oscillation and stays fine enough for shallow wells.
    """
    p, b = params.p, params.beta
    eps_min = p - (size - 1)
    x_hi = math.log(params.nu) / b + 45.0 / (b * 2.0 * eps_min)
    y_hi = 4.0 * p + 2.0 + 20.0 * (4.0 * p) ** (1.0 / 3.0) + 60.0
    x_lo = -math.log(y_hi / params.nu) / b
    if n_intervals is None:
        h = min(2.0 / params.nu, 0.05) / b
        n_intervals = int(math.ceil((x_hi - x_lo) / h))
    return np.linspace(x_lo, x_hi, n_intervals + 1)


def _x2_sums(params: ModelParams, size: int, grid: np.ndarray):
    """Trapezoid values of ``int psi_m x^2 psi_n dx`` at spacing h and h/2."""
    h = grid[1] - grid[0]
    w = np.full(grid.shape, h)
    w[[0, -1]] *= 0.5
    b = basis_values(params, grid, size)
    coarse = (b * (w * grid ** 2)) @ b.T
    mid = grid[:-1] + 0.5 * h
    bm = basis_values(params, mid, size)
    fine = 0.5 * coarse + (bm * (0.5 * h * mid ** 2)) @ bm.T
    # BLAS summation order breaks exact symmetry at the last bit
    return 0.5 * (coarse + coarse.T), 0.5 * (fine + fine.T)


def _check_x2(coarse: np.ndarray, fine: np.ndarray) -> None:
    # Cauchy-Schwarz bound |<m|x2|n>| <= sqrt(<m|x2|m><n|x2|n>) sets the scale
    d = np.sqrt(np.abs(np.diag(fine)))
    scale = np.maximum(np.abs(fine), np.outer(d, d))
    err = np.abs(coarse - fine) / scale
    if np.max(err) > X2_RTOL:
        m, n = np.unravel_index(np.argmax(err), err.shape)
        raise QuadratureError(
            f"<x^2>_({m},{n}) not converged: halving the step changed it by "
            f"{err[m, n]:.2e} relative")


def x2_matrix(params: ModelParams, size: int | None = None,
              n_intervals: int | None = None) -> np.ndarray:
    """``<psi_m|x^2|psi_n>`` for ``m, n < size``, checked by step halving."""
    size = params.n_max if size is None else size
    coarse, fine = _x2_sums(params, size, x2_grid(params, size, n_intervals))
    _check_x2(coarse, fine)
    return fine


def x2_elem(params: ModelParams, n: int, k: int, n_intervals: int | None = None) -> float:
    """``<psi_{n+k}| x^2 |psi_n>`` by quadrature, step-halving checked."""
    _check_pair(params, n, k)
    m = n + k
    size = m + 1
    coarse, fine = _x2_sums(params, size, x2_grid(params, size, n_intervals))
    idx = sorted({m, n})
    _check_x2(coarse[np.ix_(idx, idx)], fine[np.ix_(idx, idx)])
    return float(fine[m, n])


# -- tables ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixElementTable:
    """Dense ``<psi_m|theta|psi_n>`` over ``m, n < size`` (complex for P)."""

    params: ModelParams
    observable: Observable
    symmetry: str
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def elem(self, m: int, n: int):
        return self.entries[m, n]


def _analytic_matrix(params: ModelParams, obs: Observable, size: int) -> np.ndarray:
    m_idx, n_idx = np.tril_indices(size, -1)
    vals = _offdiag(params, obs, n_idx, m_idx - n_idx)
    dtype = complex if obs is Observable.P else float
    out = np.zeros((size, size), dtype=dtype)
    if obs is Observable.P:
        out[m_idx, n_idx] = 1j * vals
        out[n_idx, m_idx] = -1j * vals
    else:
        out[m_idx, n_idx] = out[n_idx, m_idx] = vals
        diag = _x_diag if obs is Observable.X else (lambda pr, j: p2_elem(pr, j, 0))
        out[np.arange(size), np.arange(size)] = [diag(params, j) for j in range(size)]
    return out


def build_table(params: ModelParams, observable: Observable, size: int | None = None,
                n_intervals: int | None = None) -> MatrixElementTable:
    size = params.n_max if size is None else size
    if not 1 <= size <= params.n_max + 1:
        raise IndexError(f"table size {size} outside [1, {params.n_max + 1}]")
    if observable is Observable.X2:
        entries = x2_matrix(params, size, n_intervals)
    else:
        entries = _analytic_matrix(params, observable, size)
    entries.setflags(write=False)
    return MatrixElementTable(params, observable, SYMMETRY[observable], entries)


class ObservableTables(NamedTuple):
    x: MatrixElementTable
    p: MatrixElementTable
    p2: MatrixElementTable
    x2: MatrixElementTable


@lru_cache(maxsize=16)
def build_tables(params: ModelParams, n_intervals: int | None = None,
                 size: int | None = None) -> ObservableTables:
    """All four tables for the state basis ``0..[p]-1`` (cached per params/grid)."""
    return ObservableTables(*(build_table(params, o, size, n_intervals) for o in
                              (Observable.X, Observable.P, Observable.P2, Observable.X2)))


# -- expectation assembly --------------------------------------------------

def _pairs(params: ModelParams, size: int):
    m_idx, n_idx = np.tril_indices(size, -1)
    k = m_idx - n_idx
    freq = params.hbar * params.beta ** 2 / (2.0 * params.m_r) * k * (2.0 * (params.p - n_idx) - k)
    return m_idx, n_idx, freq


def expectation(state: SqueezedState, table: MatrixElementTable, t=0.0):
    """Time-dependent mean of a symmetric or skew-symmetric observable.

    The lower triangle ``<n+k|theta|n>`` is combined with
    ``w = conj(u_n) u_{n+k}`` and the Bohr phases ``alpha(n, k) t``;
    symmetric tables add the diagonal, skew ones have none.  Returns a float
    for scalar ``t`` and an array otherwise.
    """
    if table.params != state.params or table.size != state.size:
        raise ConfigurationError(
            f"table ({table.params}, size {table.size}) does not match state "
            f"({state.params}, size {state.size})")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    u = state.c
    m_idx, n_idx, freq = _pairs(state.params, state.size)
    w = np.conj(u[n_idx]) * u[m_idx]
    theta = table.entries[m_idx, n_idx]
    phase = np.multiply.outer(t_arr, freq)
    cos, sin = np.cos(phase), np.sin(phase)
    if table.symmetry == "symmetric":
        diag = np.sum(np.abs(u) ** 2 * np.real(np.diag(table.entries)))
        cross = (cos * w.real + sin * w.imag) @ np.real(theta)
        out = diag + 2.0 * cross
    else:
        cross = (sin * w.real - cos * w.imag) @ theta
        out = np.real(2j * cross)
    return float(out[0]) if np.ndim(t) == 0 else out


class TrajectoryPoint(NamedTuple):
    t: float
    x_mean: float
    p_mean: float
    x_var: float
    p_var: float
    uncertainty: float
    clamped: bool = False


def _variance(second, first, what: str):
    var = np.asarray(second - first ** 2)
    if np.any(var < -VARIANCE_CLAMP):
        raise AccuracyError(f"negative {what} variance {var.min():.3e}")
    clamped = var < 0
    return np.where(clamped, 0.0, var), clamped


def _dispersion_arrays(state: SqueezedState, tables: ObservableTables, times):
    xm = expectation(state, tables.x, times)
    pm = expectation(state, tables.p, times)
    xv, cx = _variance(expectation(state, tables.x2, times), xm, "position")
    pv, cp = _variance(expectation(state, tables.p2, times), pm, "momentum")
    return xm, pm, xv, pv, cx | cp


def dispersions(state: SqueezedState, tables: ObservableTables, t: float = 0.0) -> TrajectoryPoint:
    """Means, variances and ``Delta = Var(x) Var(p)`` at time ``t``."""
    xm, pm, xv, pv, cl = _dispersion_arrays(state, tables, np.array([float(t)]))
    return TrajectoryPoint(float(t), float(xm[0]), float(pm[0]), float(xv[0]), float(pv[0]),
                           float(xv[0] * pv[0]), bool(cl[0]))


def trajectory(state: SqueezedState, tables: ObservableTables,
               times: Sequence[float]) -> list[TrajectoryPoint]:
    """One :class:`TrajectoryPoint` per entry of ``times`` (order preserved)."""
    times = np.asarray(times, dtype=float)
    xm, pm, xv, pv, cl = _dispersion_arrays(state, tables, times)
    return [TrajectoryPoint(float(t), float(a), float(b), float(c), float(d), float(c * d), bool(e))
            for t, a, b, c, d, e in zip(times, xm, pm, xv, pv, cl)]


def energy_differences(params: ModelParams, n: int, k: int) -> float:
    """``(E_{n+k} - E_n) / hbar`` straight from the spectrum."""
    e = energies(params)
    return (e[n + k] - e[n]) / params.hbar
