"""Generalized Gauss-Laguerre quadrature on the half line.

A rule of ``order`` nodes integrates ``y**alpha * exp(-y) * g(y)`` exactly for
polynomial ``g`` of degree ``< 2 * order``.  Weights are stored normalized by
the weight mass ``Gamma(alpha + 1)`` and also as logs, so rules with
``alpha`` in the hundreds (deep wells) stay representable.

Nodes come from the Jacobi matrix eigenvalues (Golub-Welsch) and are then
Newton-polished on the orthonormal recurrence; weights use the Christoffel
formula ``w_i = 1 / sum_k p_k(y_i)**2`` evaluated with running rescaling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import DomainError, QuadratureError

_RESCALE = 1e100


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Immutable Gauss rule for the weight ``y**alpha * exp(-y)``.

    ``weights`` are normalized to sum to one; the un-normalized weight of
    node ``i`` is ``exp(log_weights[i] + log_mass)``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    alpha: float = 0.0
    log_weights: np.ndarray = field(default=None, repr=False)
    log_mass: float = 0.0

    def expect(self, g) -> float:
        """``sum_i w_i g(y_i)``: mean of ``g`` under the normalized weight."""
        vals = np.asarray(g(self.nodes) if callable(g) else g)
        return float(np.sum(self.weights * vals))

    def integral_weights(self) -> np.ndarray:
        """Weights for plain integrals ``int_0^inf f(y) dy`` (weight divided out)."""
        y = self.nodes
        return np.exp(self.log_weights + self.log_mass + y - self.alpha * np.log(y))


def _orthonormal_values(order: int, alpha: float, x: np.ndarray):
    """Scaled ``p_order(x)``, ``p_order'(x)`` and ``sum_{k<order} p_k(x)**2``.

    All three share the per-node scale factor ``exp(log_scale)`` (squared for
    the sum) and are returned as ``(p, dp, sumsq, log_scale)``.
    """
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)
    d_prev = np.zeros_like(x)
    d_cur = np.zeros_like(x)
    sumsq = np.zeros_like(x)
    log_scale = np.zeros_like(x)
    b_prev = 0.0
    for k in range(order):
        sumsq += p_cur * p_cur
        a_k = 2 * k + alpha + 1
        b_k = math.sqrt((k + 1) * (k + 1 + alpha))
        p_next = ((x - a_k) * p_cur - b_prev * p_prev) / b_k
        d_next = (p_cur + (x - a_k) * d_cur - b_prev * d_prev) / b_k
        p_prev, p_cur = p_cur, p_next
        d_prev, d_cur = d_cur, d_next
        b_prev = b_k
        big = np.maximum(np.abs(p_cur), np.abs(d_cur)) > _RESCALE
        if big.any():
            for arr in (p_prev, p_cur, d_prev, d_cur):
                arr[big] /= _RESCALE
            sumsq[big] /= _RESCALE ** 2
            log_scale[big] += math.log(_RESCALE)
    return p_cur, d_cur, sumsq, log_scale


@lru_cache(maxsize=2048)
def gauss_laguerre(order: int, alpha: float = 0.0) -> QuadratureRule:
    """Build (and cache) the ``order``-point rule for weight ``y**alpha e^-y``."""
    if order < 1:
        raise DomainError("quadrature order must be >= 1")
    if not alpha > -1.0:
        raise DomainError(f"Laguerre weight needs alpha > -1, got {alpha}")
    k = np.arange(order, dtype=float)
    diag = 2 * k + alpha + 1
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    x = eigh_tridiagonal(diag, off, eigvals_only=True)
    x = np.clip(np.sort(x), np.finfo(float).tiny, None)
    for _ in range(3):
        p, dp, _, _ = _orthonormal_values(order, alpha, x)
        step = p / dp
        x = x - step
        if np.all(np.abs(step) <= 4e-16 * x):
            break
    _, _, sumsq, log_scale = _orthonormal_values(order, alpha, x)
    log_w = -(np.log(sumsq) + 2 * log_scale)
    # renormalize against accumulated rounding in the Christoffel sums
    shift = np.logaddexp.reduce(log_w)
    log_w = log_w - shift
    if np.any(np.diff(x) <= 0) or np.any(x <= 0):
        raise QuadratureError(f"node construction failed for order={order}, alpha={alpha}")
    for a in (x, log_w):
        a.setflags(write=False)
    weights = np.exp(log_w)
    weights.setflags(write=False)
    return QuadratureRule(nodes=x, weights=weights, order=order, alpha=float(alpha),
                          log_weights=log_w, log_mass=math.lgamma(alpha + 1.0))


def halfline_quadrature(f, rule: QuadratureRule, *, check: bool = True,
                        rtol: float = 1e-10, atol: float = 1e-14) -> float:
    """Approximate ``int_0^inf f(y) dy`` with ``rule``.

    ``f`` is the full integrand; the rule's weight ``y**alpha e^-y`` is divided
    out internally.  With ``check`` the integral is repeated at twice the
    order and a :class:`QuadratureError` is raised if the two differ by more
    than ``atol + rtol * |I|``; the higher-order value is returned.
    """
    def run(r: QuadratureRule) -> float:
        vals = np.asarray(f(r.nodes), dtype=float)
        bad = ~np.isfinite(vals)
        if bad.any():
            i = int(np.argmax(bad))
            raise QuadratureError(f"non-finite integrand {vals[i]} at node y={r.nodes[i]!r}")
        return float(np.sum(r.integral_weights() * vals))

    first = run(rule)
    if not check:
        return first
    second = run(gauss_laguerre(2 * rule.order, rule.alpha))
    if abs(first - second) > atol + rtol * abs(second):
        raise QuadratureError(
            f"order {rule.order} -> {2 * rule.order} changed the integral "
            f"from {first!r} to {second!r}")
    return second
