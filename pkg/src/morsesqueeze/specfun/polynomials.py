"""Classical polynomials by three-term recurrence.

Associated Laguerre polynomials are needed up to degree ~260 with large
parameters, where the raw values leave the double range; the ``_scaled``
variant carries a per-element natural-log scale and rescales on the fly.

The terminating ``2F1`` at argument 2 alternates with terms that exceed the
result by up to ~20 orders of magnitude, so it is summed exactly in rational
arithmetic (floats are exact binary fractions) and rounded once at the end.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import DegenerateParameterError, DomainError
from .scaled import ScaledComplex

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


def assoc_laguerre_scaled(n, alpha, y):
    """Associated Laguerre ``L_n^alpha(y)`` as ``(mantissa, log_scale)``.

    ``L = mantissa * exp(log_scale)``; ``log_scale`` is an integer multiple of
    ``ln(1e150)`` so it is exactly zero whenever no rescaling happened.
    ``n``, ``alpha`` and ``y`` broadcast against each other; ``n`` may vary
    element-wise (the recurrence runs to ``max(n)`` and captures each degree).
    """
    n = np.asarray(n)
    if n.size and (not np.issubdtype(n.dtype, np.integer) and np.any(n != np.floor(n))):
        raise DomainError("Laguerre degree must be integral")
    n = n.astype(np.int64)
    if np.any(n < 0):
        raise DomainError("Laguerre degree must be non-negative")
    alpha = np.asarray(alpha, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = np.broadcast_shapes(n.shape, alpha.shape, y.shape)
    nb = np.broadcast_to(n, shape)
    ab = np.broadcast_to(alpha, shape)
    yb = np.broadcast_to(y, shape)

    out_m = np.ones(shape)
    out_s = np.zeros(shape)
    nmax = int(nb.max()) if nb.size else 0
    if nmax == 0:
        return out_m, out_s

    scale = np.zeros(shape)
    prev = np.ones(shape)
    cur = np.array(1.0 + ab - yb, ndmin=1).reshape(shape)
    hit = nb == 1
    out_m[hit] = cur[hit]
    for k in range(1, nmax):
        nxt = ((2 * k + 1 + ab - yb) * cur - (k + ab) * prev) / (k + 1)
        prev, cur = cur, np.asarray(nxt).reshape(shape)
        big = np.abs(cur) > _RESCALE
        if big.any():
            cur[big] /= _RESCALE
            prev[big] /= _RESCALE
            scale[big] += _LOG_RESCALE
        hit = nb == k + 1
        if hit.any():
            out_m[hit] = cur[hit]
            out_s[hit] = scale[hit]
    return out_m, out_s


def assoc_laguerre(n, alpha, y):
    """Associated Laguerre polynomial ``L_n^alpha(y)`` by forward recurrence.

    Parameters
    ----------
    n : int or int array
        Degree(s), ``n >= 0``.
    alpha : float or array
        Parameter, ``alpha > -1`` in all uses here.
    y : float or array
        Argument on the half line.

    Returns
    -------
    float or ndarray
        Values; may be ``inf`` where the polynomial exceeds the double range
        (use :func:`assoc_laguerre_scaled` there).
    """
    m, s = assoc_laguerre_scaled(n, alpha, y)
    with np.errstate(over="ignore"):
        val = m * np.exp(s)
    return float(val) if val.ndim == 0 else val


def assoc_laguerre_log(n, alpha, y):
    """``(log|L_n^alpha(y)|, sign)`` without overflow."""
    m, s = assoc_laguerre_scaled(n, alpha, y)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(m)) + s, np.sign(m)


def hermite_complex(n: int, w):
    """Physicists' Hermite polynomial ``H_n(w)`` for complex argument(s)."""
    if n < 0:
        raise DomainError("Hermite degree must be non-negative")
    w = np.asarray(w, dtype=complex)
    prev = np.ones_like(w)
    if n == 0:
        return complex(prev) if prev.ndim == 0 else prev
    cur = 2.0 * w
    for k in range(1, n):
        prev, cur = cur, 2.0 * w * cur - 2.0 * k * prev
    return complex(cur) if cur.ndim == 0 else cur


def _check_hyp2f1(n: int, A: float) -> None:
    if n < 0:
        raise DomainError("hypergeometric degree must be non-negative")
    for j in range(n):
        if abs(1.0 - A + j) <= 1e-13 * max(1.0, abs(A)):
            raise DegenerateParameterError(
                f"(1 - A)_k vanishes at k = {j + 1} for A = {A}, n = {n}")


def _round_scaled(re: Fraction, im: Fraction) -> ScaledComplex:
    """Correctly scaled complex from exact parts, safe beyond the double range."""
    mag = max(abs(re), abs(im))
    if mag == 0:
        return ScaledComplex.zero()
    e = mag.numerator.bit_length() - mag.denominator.bit_length()
    shift = Fraction(2) ** -e
    return ScaledComplex._normalized(complex(float(re * shift), float(im * shift)), e)


def hyp2f1_terminating_scaled(n: int, v: complex, A: float) -> ScaledComplex:
    """Scaled value of ``2F1(-n, -v; 1 - A; 2)``; see :func:`hyp2f1_terminating`."""
    _check_hyp2f1(n, A)
    v = complex(v)
    vr, vi, a = Fraction(v.real), Fraction(v.imag), Fraction(A)
    tr, ti = Fraction(1), Fraction(0)
    sr, si = tr, ti
    for k in range(n):
        f = Fraction(2 * (k - n)) / ((k + 1) * (k + 1 - a))
        dr = k - vr
        tr, ti = f * (tr * dr + ti * vi), f * (ti * dr - tr * vi)
        sr += tr
        si += ti
    return _round_scaled(sr, si)


def hyp2f1_terminating(n: int, v: complex, A: float) -> complex:
    """Terminating Gauss series ``sum_k 2^k/k! (-n)_k (-v)_k / (1-A)_k``.

    The series stops at ``k = n`` because ``(-n)_k`` vanishes beyond it, so
    the result is a degree-``n`` polynomial in ``v``.  Raises
    :class:`DegenerateParameterError` when a denominator ``(1-A)_k`` with
    ``k <= n`` vanishes, i.e. for integer ``A`` in ``1..n``.  The sum is
    exact for the given floating-point inputs.
    """
    return complex(hyp2f1_terminating_scaled(n, v, A))
