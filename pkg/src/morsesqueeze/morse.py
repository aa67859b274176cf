"""The one-dimensional Morse oscillator: parameters, spectrum, eigenfunctions
and the abstract ladder action for the supported ``k(n)`` choices.

Conventions: ``y = nu * exp(-beta * x)``, ``p = (nu - 1) / 2``,
``eps_n = p - n`` and bound states ``n = 0 .. floor(p)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateParameterError, DomainError, ModelTooShallowError
from .specfun import ScaledReal, assoc_laguerre_log, gauss_laguerre, log_gamma, pochhammer


class LadderVariant(enum.Enum):
    """Choice of ``k(n)`` in ``A- psi_n = sqrt(k(n)) psi_{n-1}``."""

    OSCILLATOR = "osc"      # k(n) = n
    ENERGY = "energy"       # k(n) = n (2p - n)
    TERMINATING = "term"    # k(n) = n ([p] + 1 - n)

    @classmethod
    def parse(cls, value) -> "LadderVariant":
        if isinstance(value, cls):
            return value
        aliases = {"osc": cls.OSCILLATOR, "oscillator": cls.OSCILLATOR,
                   "oscillator-like": cls.OSCILLATOR,
                   "energy": cls.ENERGY, "energy-like": cls.ENERGY,
                   "term": cls.TERMINATING, "terminating": cls.TERMINATING}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown ladder variant {value!r}") from None


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless depth ``nu`` plus the unit scales of one Morse system.

    Defaults ``hbar = 1, m_r = 1/2, beta = 1`` give ``hbar / (2 m_r) = 1``.
    """

    nu: float
    beta: float = 1.0
    hbar: float = 1.0
    m_r: float = 0.5
    p: float = field(init=False)
    n_max: int = field(init=False)

    def __post_init__(self):
        for name in ("nu", "beta", "hbar", "m_r"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and positive, got {v!r}")
        if self.nu <= 1:
            raise DomainError(f"nu must exceed 1, got {self.nu}")
        p = (self.nu - 1.0) / 2.0
        n_max = math.floor(p)
        if n_max < 1:
            raise ModelTooShallowError(f"nu = {self.nu} gives [p] = {n_max}; need at least 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n_max", n_max)

    @property
    def degenerate_top(self) -> bool:
        """Integral ``p``: level ``[p]`` has ``eps = 0`` and cannot be normalized."""
        return self.p == self.n_max

    @property
    def n_normalizable(self) -> int:
        """Number of levels with ``eps_n > 0`` (``[p] + 1`` unless ``p`` is integral)."""
        return self.n_max + (0 if self.degenerate_top else 1)

    @property
    def energy_unit(self) -> float:
        """``hbar**2 beta**2 / (2 m_r)``."""
        return self.hbar ** 2 * self.beta ** 2 / (2.0 * self.m_r)

    @property
    def depth(self) -> float:
        """Well depth ``V0 = hbar**2 beta**2 nu**2 / (8 m_r)``."""
        return self.hbar ** 2 * self.beta ** 2 * self.nu ** 2 / (8.0 * self.m_r)


def params_from_spectroscopic(omega_e: float, omega_e_x_e: float, beta: float = 1.0,
                              hbar: float = 1.0, m_r: float = 0.5) -> ModelParams:
    """Model from harmonicity/anharmonicity constants, ``nu = omega_e / omega_e x_e``."""
    if not (omega_e > omega_e_x_e > 0):
        raise DomainError("need omega_e > omega_e_x_e > 0")
    return ModelParams(nu=omega_e / omega_e_x_e, beta=beta, hbar=hbar, m_r=m_r)


@dataclass(frozen=True)
class EigenState:
    n: int
    epsilon: float
    energy: float
    norm_const: ScaledReal


def _check_level(params: ModelParams, n: int, lo: int = 0) -> None:
    if not (lo <= n <= params.n_max) or int(n) != n:
        raise IndexError(f"level {n} outside [{lo}, {params.n_max}]")


def energy(params: ModelParams, n: int) -> float:
    """Bound-state energy ``E_n = -(hbar^2 beta^2 / 2 m_r) (p - n)^2``."""
    _check_level(params, n)
    return -params.energy_unit * (params.p - n) ** 2 + 0.0    # no -0.0 at eps = 0


def shifted_energy(params: ModelParams, n: int) -> float:
    """``e(n) = n (2p - n) = eps_0^2 - eps_n^2`` (dimensionless)."""
    _check_level(params, n)
    return n * (2.0 * params.p - n)


def energies(params: ModelParams, count: int | None = None) -> np.ndarray:
    count = params.n_max + 1 if count is None else count
    n = np.arange(count)
    return -params.energy_unit * (params.p - n) ** 2 + 0.0


def log_norm_const(params: ModelParams, n: int) -> float:
    """``ln N_n`` with ``N_n = sqrt(2 beta (p-n) Gamma(n+1) / Gamma(2p-n+1))``."""
    p = params.p
    if not p - n > 0:
        raise DegenerateParameterError(
            f"level {n} has eps = p - n = {p - n}; its normalization vanishes")
    return 0.5 * (math.log(2.0 * params.beta * (p - n)) + log_gamma(n + 1.0)
                  - log_gamma(2.0 * p - n + 1.0))


def norm_const(params: ModelParams, n: int) -> ScaledReal:
    """Eigenfunction normalization ``N_n`` in scaled form."""
    _check_level(params, n)
    return ScaledReal.from_log(log_norm_const(params, n))


def eigenstate(params: ModelParams, n: int) -> EigenState:
    _check_level(params, n)
    return EigenState(n=n, epsilon=params.p - n, energy=energy(params, n),
                      norm_const=norm_const(params, n))


def log_basis_in_y(params: ModelParams, y, count: int):
    """``(log|psi_n|, sign)`` for ``n < count`` at points ``y`` (shape ``(count, len(y))``).

    Evaluated as ``ln N_n - y/2 + eps_n ln y + ln|L_n^{2 eps_n}(y)|`` so that
    neither ``y**eps_n`` nor the Laguerre factor overflows.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    n = np.arange(count)[:, None]
    eps = params.p - n
    with np.errstate(divide="ignore"):
        log_y = np.log(y)[None, :]
    log_l, sgn = assoc_laguerre_log(n, 2.0 * eps, y[None, :])
    log_n = np.array([log_norm_const(params, k) for k in range(count)])[:, None]
    with np.errstate(invalid="ignore"):
        logv = log_n - 0.5 * y[None, :] + eps * log_y + log_l
    logv = np.where(np.isnan(logv), -np.inf, logv)
    return logv, sgn


def basis_values(params: ModelParams, x, count: int | None = None) -> np.ndarray:
    """Matrix ``psi_n(x_j)`` for ``n < count`` (default all bound states)."""
    count = params.n_normalizable if count is None else count
    x = np.atleast_1d(np.asarray(x, dtype=float))
    with np.errstate(over="ignore"):
        y = params.nu * np.exp(-params.beta * x)
    logv, sgn = log_basis_in_y(params, y, count)
    out = sgn * np.exp(logv)
    # x -> -inf: y = inf, psi -> 0
    out[:, ~np.isfinite(y)] = 0.0
    return out


def eigenfunction_value(params: ModelParams, n: int, x):
    """``psi_n(x) = N_n exp(-y/2) y^{eps_n} L_n^{2 eps_n}(y)``, ``y = nu e^{-beta x}``.

    Underflow in either tail returns 0.
    """
    _check_level(params, n)
    x_arr = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        y = params.nu * np.exp(-params.beta * np.atleast_1d(x_arr))
    finite = np.isfinite(y)
    out = np.zeros(y.shape)
    if finite.any():
        yf = y[finite]
        eps = params.p - n
        log_l, sgn = assoc_laguerre_log(n, 2.0 * eps, yf)
        with np.errstate(divide="ignore"):
            logv = log_norm_const(params, n) - 0.5 * yf + eps * np.log(yf) + log_l
        out[finite] = sgn * np.exp(logv)
    return float(out[0]) if x_arr.ndim == 0 else out.reshape(x_arr.shape)


def overlap_matrix(params: ModelParams, size: int | None = None) -> np.ndarray:
    """Gram matrix ``int psi_m psi_n dx`` for ``m, n < size`` by Gauss quadrature.

    With ``dx = -dy / (beta y)`` each product is ``y**(2p - m - n - 1) e^-y``
    times a polynomial of degree ``m + n``, so a Laguerre rule with that
    weight exponent and ``(m + n) // 2 + 1`` nodes is exact.
    """
    size = params.n_normalizable if size is None else size
    out = np.empty((size, size))
    p = params.p
    log_n = np.array([log_norm_const(params, k) for k in range(size)]) - 0.5 * math.log(params.beta)
    for s in range(2 * size - 1):
        m = np.arange(max(0, s - size + 1), min(s, size - 1) + 1)
        rule = gauss_laguerre(s // 2 + 1, 2.0 * p - s - 1.0)
        y = rule.nodes[None, :]
        log_lm, sg_m = assoc_laguerre_log(m[:, None], 2.0 * (p - m[:, None]), y)
        log_ln, sg_n = assoc_laguerre_log(s - m[:, None], 2.0 * (p - s + m[:, None]), y)
        logv = log_lm + log_ln + rule.log_weights[None, :]
        vals = np.sum(sg_m * sg_n * np.exp(logv), axis=1)
        # rule weights carry Gamma(alpha+1); beta cancels between N_n and dx
        out[m, s - m] = vals * np.exp(log_n[m] + log_n[s - m] + rule.log_mass)
    return out


def _k_raw(params: ModelParams, variant: LadderVariant, n: int) -> float:
    if variant is LadderVariant.OSCILLATOR:
        return float(n)
    if variant is LadderVariant.ENERGY:
        return n * (2.0 * params.p - n)
    return float(n * (params.n_max + 1 - n))


def k_factor(params: ModelParams, variant: LadderVariant, n: int) -> float:
    """Ladder factor ``k(n)`` for ``1 <= n <= [p]``."""
    _check_level(params, n, lo=1)
    return _k_raw(params, LadderVariant.parse(variant), n)


def k_values(params: ModelParams, variant: LadderVariant, count: int) -> np.ndarray:
    """``k(0), ..., k(count-1)`` (with ``k(0) = 0``), no range check."""
    variant = LadderVariant.parse(variant)
    return np.array([_k_raw(params, variant, n) for n in range(count)])


def rho(params: ModelParams, variant: LadderVariant, n: int) -> ScaledReal:
    """Moment factor ``rho(n) = prod_{i<=n} k(i)``, ``rho(0) = 1``."""
    _check_level(params, n)
    variant = LadderVariant.parse(variant)
    acc = ScaledReal.one()
    for i in range(1, n + 1):
        acc = acc * _k_raw(params, variant, i)
    return acc


def rho_energy_closed(params: ModelParams, n: int) -> ScaledReal:
    """Energy-like ``rho(n) = (-1)^n n! (1 - 2p)_n``."""
    _check_level(params, n)
    fact = ScaledReal.from_log(log_gamma(n + 1.0))
    val = fact * pochhammer(1.0 - 2.0 * params.p, n)
    return -val if n % 2 else val


class LadderResult(NamedTuple):
    coeffs: np.ndarray
    truncated: bool


def ladder_apply(params: ModelParams, variant: LadderVariant, direction: str,
                 c) -> LadderResult:
    """Apply ``A-`` (``"lower"``) or ``A+`` (``"raise"``) to coefficients ``c``.

    ``c`` spans the full bound basis ``0..[p]``.  Raising out of ``[p]`` is
    dropped; ``truncated`` reports whether a nonzero component was lost.
    """
    variant = LadderVariant.parse(variant)
    c = np.asarray(c, dtype=complex)
    size = params.n_max + 1
    if c.shape != (size,):
        raise ValueError(f"coefficient vector must have length {size}, got {c.shape}")
    k = np.sqrt(np.maximum(k_values(params, variant, size + 1), 0.0))
    out = np.zeros(size, dtype=complex)
    truncated = False
    if direction == "lower":
        out[:-1] = k[1:size] * c[1:]
    elif direction == "raise":
        out[1:] = k[1:size] * c[:-1]
        lost = k[size] * c[-1]
        truncated = bool(lost != 0)
    else:
        raise ValueError(f"direction must be 'lower' or 'raise', got {direction!r}")
    return LadderResult(out, truncated)


def ho_limit_energy(n: int, k_force: float, beta: float, hbar: float = 1.0,
                    m_r: float = 0.5) -> float:
    """Level ``n`` of the shifted well ``V0 (1 - e^{-beta x})^2`` with ``V0 = k'/(2 beta^2)``.

    ``nu = 2 sqrt(m_r k') / (beta^2 hbar)``; as ``beta -> 0`` this tends to
    ``hbar sqrt(k'/m_r) (n + 1/2)``.
    """
    if n < 0 or min(k_force, beta, hbar, m_r) <= 0:
        raise DomainError("ho_limit_energy needs n >= 0 and positive parameters")
    nu = 2.0 * math.sqrt(m_r * k_force) / (beta ** 2 * hbar)
    unit = hbar ** 2 * beta ** 2 / (2.0 * m_r)
    # (nu/2)^2 - ((nu-1)/2 - n)^2 factored to avoid cancellation at large nu
    return unit * (n + 0.5) * (nu - n - 0.5)
