"""Squeezed coherent states on the finite Morse basis.

A state is the superposition ``sum_{n < [p]} Z(n) / sqrt(rho(n)) psi_n``,
normalized, where ``Z`` solves ``Z(n+1) - z Z(n) + gamma k(n) Z(n-1) = 0``
with ``Z(0) = 1, Z(1) = z``.  The recurrence is the computational path; the
Hermite / hypergeometric closed forms are kept as independent checks.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NormalizabilityError, UndefinedStatisticError
from .morse import (LadderVariant, ModelParams, _k_raw, basis_values, energies,
                    ladder_apply)
from .specfun import (ScaledComplex, ScaledReal, hermite_complex,
                      hyp2f1_terminating_scaled, log_gamma, pochhammer)


def _check_gamma(gamma: complex) -> None:
    if not abs(gamma) < 1.0:
        raise NormalizabilityError(f"|gamma| must be < 1 for a normalizable state, got {gamma}")


@dataclass(frozen=True, eq=False)
class CoeffSequence:
    """``Z(z, gamma, n)`` and ``rho(n)`` for ``n = 0..N`` in scaled form."""

    params: ModelParams
    variant: LadderVariant
    z: complex
    gamma: complex
    Z: tuple[ScaledComplex, ...]
    rho: tuple[ScaledReal, ...]

    def __len__(self) -> int:
        return len(self.Z)

    def values(self) -> np.ndarray:
        """``Z`` as plain complex numbers (raises OverflowError if out of range)."""
        return np.array([complex(v) for v in self.Z])


def coeffs_recurrence(params: ModelParams, variant, z: complex, gamma: complex,
                      N: int | None = None) -> CoeffSequence:
    """Run the three-term recurrence up to ``Z(N)`` (default ``N = [p]``)."""
    variant = LadderVariant.parse(variant)
    z, gamma = complex(z), complex(gamma)
    _check_gamma(gamma)
    N = params.n_max if N is None else N
    if not 0 <= N <= params.n_max:
        raise IndexError(f"N = {N} outside [0, {params.n_max}]")
    Z = [ScaledComplex.from_complex(1.0)]
    rho = [ScaledReal.one()]
    if N >= 1:
        Z.append(ScaledComplex.from_complex(z))
        rho.append(ScaledReal.from_float(_k_raw(params, variant, 1)))
    for n in range(1, N):
        k_n = _k_raw(params, variant, n)
        Z.append(Z[n] * z - Z[n - 1] * (gamma * k_n))
        rho.append(rho[n] * _k_raw(params, variant, n + 1))
    return CoeffSequence(params, variant, z, gamma, tuple(Z), tuple(rho))


def coeffs_closed_osc(z: complex, gamma: complex, n: int) -> complex:
    """Oscillator-like ``Z(n) = (gamma/2)^{n/2} H_n(z / sqrt(2 gamma))``.

    Uses principal roots; ``gamma = 0`` returns ``z**n``.
    """
    z, gamma = complex(z), complex(gamma)
    if gamma == 0:
        return z ** n
    s = cmath.sqrt(gamma / 2.0)
    return s ** n * hermite_complex(n, z / (2.0 * s))


def coeffs_closed_energy(params: ModelParams, z: complex, gamma: complex, n: int,
                         A: float | None = None) -> complex:
    """Hypergeometric closed form for ``k(n) = n (A - n)`` (default ``A = 2p``).

    ``Z(n) = (-1)^n gamma^{n/2} Gamma(A)/Gamma(A-n)
    2F1(-n, -z/(2 sqrt(gamma)) + (1-A)/2; 1-A; 2)``.  ``A = [p] + 1`` gives
    the terminating variant.
    """
    z, gamma = complex(z), complex(gamma)
    A = 2.0 * params.p if A is None else float(A)
    if n == 0:
        return 1.0 + 0j
    if gamma == 0:
        return z ** n
    sg = cmath.sqrt(gamma)
    v = z / (2.0 * sg) - (1.0 - A) / 2.0
    pref = ScaledComplex.from_real(pochhammer(A - n, n)) * ((-sg) ** n)
    return complex(hyp2f1_terminating_scaled(n, v, A) * pref)


def _ladder_A(params: ModelParams, variant: LadderVariant) -> float | None:
    if variant is LadderVariant.ENERGY:
        return 2.0 * params.p
    if variant is LadderVariant.TERMINATING:
        return float(params.n_max + 1)
    return None


def vacuum_coeffs(params: ModelParams, variant, gamma: complex, n: int) -> complex:
    """Closed form of ``Z(0, gamma, n)``; odd ``n`` vanish identically.

    Oscillator-like: ``Z(2m) = (2m)!/m! (-gamma/2)^m``.  Quadratic ``k(n) =
    n (A - n)``: ``Z(2m) = 4^{m-1} (1-A) (3/2)_{m-1} (3/2 - A/2)_{m-1} gamma^m``.
    """
    variant = LadderVariant.parse(variant)
    gamma = complex(gamma)
    _check_gamma(gamma)
    if n % 2:
        return 0j
    m = n // 2
    if m == 0:
        return 1.0 + 0j
    if variant is LadderVariant.OSCILLATOR:
        mag = ScaledReal.from_log(log_gamma(2 * m + 1.0) - log_gamma(m + 1.0))
        return complex(ScaledComplex.from_real(mag) * ((-gamma / 2.0) ** m))
    A = _ladder_A(params, variant)
    mag = (ScaledReal.from_float(1.0 - A) * pochhammer(1.5, m - 1)
           * pochhammer(1.5 - A / 2.0, m - 1))
    mag = ScaledReal.from_log(mag.log() + (m - 1) * math.log(4.0), mag.sign)
    return complex(ScaledComplex.from_real(mag) * gamma ** m)


@dataclass(frozen=True, eq=False)
class SqueezedState:
    """Normalized finite superposition for one ``(variant, z, gamma)``.

    ``c[n]`` (``n = 0..[p]-1``) are the unit-norm amplitudes on ``psi_n``;
    ``norm`` is ``sum_n |Z(n)|^2 / rho(n)``.
    """

    params: ModelParams
    variant: LadderVariant
    coeffs: CoeffSequence
    norm: ScaledReal
    c: np.ndarray

    @property
    def z(self) -> complex:
        return self.coeffs.z

    @property
    def gamma(self) -> complex:
        return self.coeffs.gamma

    @property
    def size(self) -> int:
        return len(self.c)

    def amplitudes(self, t: float = 0.0) -> np.ndarray:
        """Amplitudes ``c_n exp(-i E_n t / hbar)``."""
        if t == 0:
            return self.c.copy()
        e = energies(self.params, self.size)
        return self.c * np.exp(-1j * e * t / self.params.hbar)


def build_state(params: ModelParams, variant, z: complex, gamma: complex) -> SqueezedState:
    """Construct the normalized squeezed coherent state."""
    variant = LadderVariant.parse(variant)
    seq = coeffs_recurrence(params, variant, z, gamma, N=params.n_max)
    size = params.n_max
    total = ScaledReal.zero()
    for n in range(size):
        total = total + seq.Z[n].abs2() / seq.rho[n]
    c = np.array([complex(seq.Z[n] / (seq.rho[n] * total).sqrt()) for n in range(size)])
    c.setflags(write=False)
    return SqueezedState(params, variant, seq, total, c)


class ResidualReport(NamedTuple):
    lambda1: complex
    lambda0: complex
    residual_norm: float


def residual(state: SqueezedState) -> ResidualReport:
    """Correction left by truncating the eigen-equation to ``n < [p]``.

    ``Lambda1 = Z([p]) / sqrt(rho([p]-1))`` and
    ``Lambda0 = gamma k([p]) Z([p]-1) / sqrt(rho([p]))``, both divided by the
    state norm so they refer to the unit state.  Applying
    ``A- + gamma A+ - z`` to the state leaves ``-Lambda1`` on ``psi_{[p]-1}``
    and ``+Lambda0`` on ``psi_{[p]}`` (see :func:`residual_vector`).
    """
    seq, P = state.coeffs, state.params.n_max
    sqrt_norm = state.norm.sqrt()
    lam1 = seq.Z[P] / (seq.rho[P - 1].sqrt() * sqrt_norm)
    k_top = _k_raw(state.params, state.variant, P)
    lam0 = seq.Z[P - 1] * (state.gamma * k_top) / (seq.rho[P].sqrt() * sqrt_norm)
    l1, l0 = complex(lam1), complex(lam0)
    return ResidualReport(l1, l0, math.hypot(abs(l1), abs(l0)))


def residual_vector(state: SqueezedState) -> np.ndarray:
    """``(A- + gamma A+ - z) c`` on the full bound basis ``0..[p]``."""
    full = np.zeros(state.params.n_max + 1, dtype=complex)
    full[:state.size] = state.c
    low = ladder_apply(state.params, state.variant, "lower", full).coeffs
    up = ladder_apply(state.params, state.variant, "raise", full).coeffs
    return low + state.gamma * up - state.z * full


def distribution(state: SqueezedState) -> np.ndarray:
    return np.abs(state.c) ** 2


def probability(state: SqueezedState, n: int) -> float:
    """Occupation ``|<psi_n | Psi>|^2`` of level ``n < [p]``."""
    if not 0 <= n < state.size:
        raise IndexError(f"level {n} outside [0, {state.size - 1}]")
    return float(abs(state.c[n]) ** 2)


def distribution_closed_form(params: ModelParams, variant, z: complex,
                             gamma: complex) -> np.ndarray:
    """Occupation probabilities from the closed-form coefficients.

    Oscillator-like: ``(|gamma|/2)^n |H_n(z/sqrt(2 gamma))|^2 / n!``;
    energy-like: ``Gamma(2p-n) / (Gamma(2p) n!) |Z(n)|^2``; both normalized
    over ``n < [p]``.
    """
    variant = LadderVariant.parse(variant)
    z, gamma = complex(z), complex(gamma)
    _check_gamma(gamma)
    n = np.arange(params.n_max)
    logfact = np.array([log_gamma(k + 1.0) for k in n])
    if variant is LadderVariant.OSCILLATOR:
        if gamma == 0:
            with np.errstate(divide="ignore"):
                logw = 2 * n * math.log(abs(z)) if z != 0 else np.where(n == 0, 0.0, -np.inf)
        else:
            w = z / cmath.sqrt(2.0 * gamma)
            h = np.array([abs(hermite_complex(int(k), w)) for k in n])
            with np.errstate(divide="ignore"):
                logw = n * math.log(abs(gamma) / 2.0) + 2 * np.log(h)
        logw = logw - logfact
    elif variant is LadderVariant.ENERGY:
        two_p = 2.0 * params.p
        zs = np.array([abs(coeffs_closed_energy(params, z, gamma, int(k))) for k in n])
        with np.errstate(divide="ignore"):
            logw = (np.array([log_gamma(two_p - k) for k in n]) - log_gamma(two_p)
                    - logfact + 2 * np.log(zs))
    else:
        raise ValueError("closed-form distribution exists for oscillator/energy variants only")
    logw = logw - np.max(logw)
    w = np.exp(logw)
    return w / w.sum()


def number_stats(state: SqueezedState) -> tuple[float, float]:
    """Mean and variance of the level number ``N``."""
    prob = distribution(state)
    n = np.arange(state.size)
    mean = float(np.sum(n * prob))
    var = float(np.sum((n - mean) ** 2 * prob))
    return mean, var


def mandel_q(state: SqueezedState) -> float:
    """Mandel parameter ``Q = (Var N - <N>) / <N>``."""
    mean, var = number_stats(state)
    if mean <= 0.0:
        raise UndefinedStatisticError("Mandel Q is undefined when <N> = 0 (ground state)")
    return (var - mean) / mean


def wavefunction(state: SqueezedState, x, t: float = 0.0) -> np.ndarray:
    """``Psi(x; t) = sum_n c_n e^{-i E_n t / hbar} psi_n(x)`` on points ``x``."""
    x_arr = np.asarray(x, dtype=float)
    psi = basis_values(state.params, np.atleast_1d(x_arr), state.size)
    out = state.amplitudes(t) @ psi
    return complex(out[0]) if x_arr.ndim == 0 else out.reshape(x_arr.shape)
