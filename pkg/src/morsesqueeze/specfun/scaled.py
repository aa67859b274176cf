"""Mantissa/exponent numbers for factorial-scale quantities.

Products such as ``rho(n)`` or ``Gamma(2p - n + 1)`` leave the double range
for deep wells (``[p] = 261`` already needs ~10^1190).  The two classes below
keep a binary exponent next to a mantissa so that these products can be
formed, divided and square-rooted without overflow; only the final normalized
ratios are converted back to ``float``/``complex``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

_LN2 = math.log(2.0)

Number = Union[int, float]


def _split(x: float) -> tuple[float, int]:
    """Return ``(m, e)`` with ``|x| = m * 2**e`` and ``m`` in ``[1, 2)``."""
    m, e = math.frexp(abs(x))
    return 2.0 * m, e - 1


@dataclass(frozen=True)
class ScaledReal:
    """Real number ``sign * mantissa * 2**exponent``.

    ``mantissa`` lies in ``[1, 2)`` except for zero, which is stored as
    ``sign = 0, mantissa = 0.0, exponent = 0``.
    """

    sign: int
    mantissa: float
    exponent: int

    def __post_init__(self):
        if self.sign == 0:
            if self.mantissa != 0.0:
                raise ValueError("zero must carry a zero mantissa")
        elif not (1.0 <= self.mantissa < 2.0) or self.sign not in (-1, 1):
            raise ValueError(f"bad ScaledReal fields {self!r}")

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls) -> "ScaledReal":
        return cls(0, 0.0, 0)

    @classmethod
    def one(cls) -> "ScaledReal":
        return cls(1, 1.0, 0)

    @classmethod
    def from_float(cls, x: Number) -> "ScaledReal":
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"cannot scale non-finite value {x}")
        if x == 0.0:
            return cls.zero()
        m, e = _split(x)
        return cls(1 if x > 0 else -1, m, e)

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> "ScaledReal":
        """Build ``sign * exp(log_abs)``; ``log_abs = -inf`` gives zero."""
        if sign == 0 or log_abs == -math.inf:
            return cls.zero()
        if not math.isfinite(log_abs):
            raise ValueError(f"cannot scale exp({log_abs})")
        e = math.floor(log_abs / _LN2)
        m = math.exp(log_abs - e * _LN2)
        # rounding can push m to the interval edges
        m2, e2 = _split(m)
        return cls(1 if sign > 0 else -1, m2, e + e2)

    @classmethod
    def coerce(cls, x: Union["ScaledReal", Number]) -> "ScaledReal":
        return x if isinstance(x, ScaledReal) else cls.from_float(x)

    # conversion ---------------------------------------------------------
    def __float__(self) -> float:
        # ldexp raises OverflowError for values beyond the double range
        return math.ldexp(self.sign * self.mantissa, self.exponent)

    def log(self) -> float:
        """Natural log of ``|self|`` (``-inf`` for zero)."""
        if self.sign == 0:
            return -math.inf
        return math.log(self.mantissa) + self.exponent * _LN2

    def is_zero(self) -> bool:
        return self.sign == 0

    # arithmetic ---------------------------------------------------------
    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.sign, self.mantissa, self.exponent)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.sign), self.mantissa, self.exponent)

    def __mul__(self, other) -> "ScaledReal":
        if isinstance(other, ScaledComplex):
            return NotImplemented
        other = ScaledReal.coerce(other)
        if self.sign == 0 or other.sign == 0:
            return ScaledReal.zero()
        m, e = _split(self.mantissa * other.mantissa)
        return ScaledReal(self.sign * other.sign, m, self.exponent + other.exponent + e)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledReal":
        other = ScaledReal.coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("ScaledReal division by zero")
        if self.sign == 0:
            return ScaledReal.zero()
        m, e = _split(self.mantissa / other.mantissa)
        return ScaledReal(self.sign * other.sign, m, self.exponent - other.exponent + e)

    def __rtruediv__(self, other) -> "ScaledReal":
        return ScaledReal.coerce(other) / self

    def __add__(self, other) -> "ScaledReal":
        other = ScaledReal.coerce(other)
        if other.sign == 0:
            return self
        if self.sign == 0:
            return other
        e = max(self.exponent, other.exponent)
        s = (math.ldexp(self.sign * self.mantissa, self.exponent - e)
             + math.ldexp(other.sign * other.mantissa, other.exponent - e))
        if s == 0.0:
            return ScaledReal.zero()
        m, de = _split(s)
        return ScaledReal(1 if s > 0 else -1, m, e + de)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledReal":
        return self + (-ScaledReal.coerce(other))

    def __rsub__(self, other) -> "ScaledReal":
        return ScaledReal.coerce(other) - self

    def sqrt(self) -> "ScaledReal":
        if self.sign < 0:
            raise ValueError("square root of a negative ScaledReal")
        if self.sign == 0:
            return self
        m, e = self.mantissa, self.exponent
        if e % 2:
            m, e = 2.0 * m, e - 1
        m2, e2 = _split(math.sqrt(m))
        return ScaledReal(1, m2, e // 2 + e2)

    def isclose(self, other, rel_tol: float = 1e-12) -> bool:
        """Relative comparison done on the scaled representation."""
        other = ScaledReal.coerce(other)
        if self.sign == 0 or other.sign == 0:
            return self.sign == other.sign
        if self.sign != other.sign:
            return False
        d = abs(self - other)
        big = max(abs(self).log(), abs(other).log())
        return d.is_zero() or d.log() - big <= math.log(rel_tol)

    def __repr__(self) -> str:
        if self.sign == 0:
            return "ScaledReal(0)"
        return f"ScaledReal({self.sign * self.mantissa!r} * 2**{self.exponent})"


@dataclass(frozen=True)
class ScaledComplex:
    """Complex number ``mantissa * 2**exponent`` with ``|mantissa|`` in ``[1, 2)``.

    The phase lives in the mantissa, the scale in the exponent.
    """

    mantissa: complex
    exponent: int

    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls(0j, 0)

    @classmethod
    def from_complex(cls, w: complex) -> "ScaledComplex":
        w = complex(w)
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValueError(f"cannot scale non-finite value {w}")
        return cls._normalized(w, 0)

    @classmethod
    def from_real(cls, r: ScaledReal) -> "ScaledComplex":
        return cls._normalized(complex(r.sign * r.mantissa), r.exponent)

    @classmethod
    def coerce(cls, w) -> "ScaledComplex":
        if isinstance(w, ScaledComplex):
            return w
        if isinstance(w, ScaledReal):
            return cls.from_real(w)
        return cls.from_complex(w)

    @staticmethod
    def _normalized(m: complex, e: int) -> "ScaledComplex":
        a = abs(m)
        if a == 0.0:
            return ScaledComplex(0j, 0)
        if math.isinf(a):
            # |re|,|im| finite but modulus overflowed
            m, e = m * 0.5, e + 1
            a = abs(m)
        _, de = _split(a)
        return ScaledComplex(_ldexp_c(m, -de), e + de)

    def __complex__(self) -> complex:
        m = self.mantissa
        return complex(math.ldexp(m.real, self.exponent), math.ldexp(m.imag, self.exponent))

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def abs(self) -> ScaledReal:
        if self.is_zero():
            return ScaledReal.zero()
        m, e = _split(abs(self.mantissa))
        return ScaledReal(1, m, self.exponent + e)

    def abs2(self) -> ScaledReal:
        a = self.abs()
        return a * a

    def log_abs(self) -> float:
        return self.abs().log()

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.mantissa.conjugate(), self.exponent)

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.exponent)

    def __mul__(self, other) -> "ScaledComplex":
        if isinstance(other, (ScaledComplex, ScaledReal)):
            o = ScaledComplex.coerce(other)
            return ScaledComplex._normalized(self.mantissa * o.mantissa, self.exponent + o.exponent)
        return ScaledComplex._normalized(self.mantissa * complex(other), self.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        if isinstance(other, (ScaledComplex, ScaledReal)):
            o = ScaledComplex.coerce(other)
            if o.is_zero():
                raise ZeroDivisionError("ScaledComplex division by zero")
            return ScaledComplex._normalized(self.mantissa / o.mantissa, self.exponent - o.exponent)
        return ScaledComplex._normalized(self.mantissa / complex(other), self.exponent)

    def __add__(self, other) -> "ScaledComplex":
        o = ScaledComplex.coerce(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        e = max(self.exponent, o.exponent)
        s = _ldexp_c(self.mantissa, self.exponent - e) + _ldexp_c(o.mantissa, o.exponent - e)
        return ScaledComplex._normalized(s, e)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-ScaledComplex.coerce(other))

    def __rsub__(self, other) -> "ScaledComplex":
        return ScaledComplex.coerce(other) - self

    def sqrt(self) -> "ScaledComplex":
        """Principal square root."""
        if self.is_zero():
            return self
        m, e = self.mantissa, self.exponent
        if e % 2:
            m, e = 2.0 * m, e - 1
        return ScaledComplex._normalized(cmath.sqrt(m), e // 2)

    def __repr__(self) -> str:
        return f"ScaledComplex({self.mantissa!r} * 2**{self.exponent})"


def _ldexp_c(m: complex, e: int) -> complex:
    return complex(math.ldexp(m.real, e), math.ldexp(m.imag, e))
