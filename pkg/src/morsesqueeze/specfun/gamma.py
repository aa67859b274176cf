"""Gamma-family functions: log-gamma, digamma and Pochhammer symbols."""
from __future__ import annotations

import math

import numpy as np
from scipy import special

from ..errors import DomainError
from .scaled import ScaledReal


def _check_positive(x, name: str) -> None:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"{name} requires finite x > 0, got {x!r}")


def log_gamma(x):
    """ln Gamma(x) for x > 0 (scalar or array)."""
    _check_positive(x, "log_gamma")
    if np.ndim(x) == 0:
        return math.lgamma(float(x))
    return special.gammaln(np.asarray(x, dtype=float))


def digamma(x):
    """d/dx ln Gamma(x) for x > 0 (scalar or array)."""
    _check_positive(x, "digamma")
    out = special.psi(np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def pochhammer(a: float, n: int) -> ScaledReal:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)`` in scaled form.

    The product is formed factor by factor, so the sign is exact and the
    relative error grows by at most one rounding per factor.
    """
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    acc = ScaledReal.one()
    for i in range(n):
        acc = acc * (a + i)
        if acc.is_zero():
            break
    return acc


def log_gamma_ratio(a: float, b: float) -> float:
    """ln(Gamma(a) / Gamma(b)) for positive a, b."""
    return log_gamma(a) - log_gamma(b)
