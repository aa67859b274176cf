"""Special functions, scaled arithmetic and half-line quadrature."""
from .gamma import digamma, log_gamma, log_gamma_ratio, pochhammer
from .polynomials import (assoc_laguerre, assoc_laguerre_log, assoc_laguerre_scaled,
                          hermite_complex, hyp2f1_terminating, hyp2f1_terminating_scaled)
from .quadrature import QuadratureRule, gauss_laguerre, halfline_quadrature
from .scaled import ScaledComplex, ScaledReal

__all__ = [
    "ScaledReal", "ScaledComplex", "QuadratureRule",
    "log_gamma", "log_gamma_ratio", "digamma", "pochhammer",
    "assoc_laguerre", "assoc_laguerre_scaled", "assoc_laguerre_log",
    "hermite_complex", "hyp2f1_terminating", "hyp2f1_terminating_scaled",
    "gauss_laguerre", "halfline_quadrature",
]
