"""Midpoint-radius ball arithmetic on top of ``mpmath.libmp``.

Every operation works at an explicit binary precision and never touches mpmath's
global context, so balls are safe to share between threads.  Midpoints are rounded
to nearest; radii are kept at low precision and always rounded upward, and each
operation adds a bound for the rounding error of its midpoint.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Optional, Union

from mpmath import libmp
from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
    to_str,
)

from .errors import DomainError

RAD_PREC = 32
MIN_PREC = 64


def default_precision() -> int:
    """Working precision in bits; ``GMHEIGHT_PREC`` overrides the default of 256."""
    try:
        return max(MIN_PREC, int(os.environ.get("GMHEIGHT_PREC", "256")))
    except ValueError:
        return 256


Number = Union[int, Fraction, "RealBall"]


def _ulp(x, prec: int):
    """Upper bound for one unit in the last place of ``x`` at ``prec`` bits."""
    if x == fzero or x[1] == 0:
        return fzero
    _, man, exp, bc = x
    return from_man_exp(1, exp + bc - prec)


def _radd(*xs):
    acc = fzero
    for x in xs:
        acc = mpf_add(acc, x, RAD_PREC, round_ceiling)
    return acc


def _rmul(a, b):
    return mpf_mul(a, b, RAD_PREC, round_ceiling)


def _exact(value) -> tuple:
    if isinstance(value, int):
        return from_int(value)
    if isinstance(value, Fraction):
        return None
    raise TypeError(type(value))


class RealBall:
    """Closed real interval ``[mid - rad, mid + rad]``."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid=fzero, rad=fzero, prec: Optional[int] = None):
        self.mid = mid
        self.rad = rad
        self.prec = prec or default_precision()

    # ----------------------------------------------------------------- constructors
    @classmethod
    def exact(cls, value, prec: Optional[int] = None) -> "RealBall":
        prec = prec or default_precision()
        if isinstance(value, RealBall):
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            m = from_int(value, prec, round_nearest)
            return cls(m, _ulp(m, prec) if m[2] > 0 or m[3] > prec else fzero, prec)
        if isinstance(value, Fraction):
            m = from_rational(value.numerator, value.denominator, prec, round_nearest)
            err = fzero if value.denominator & (value.denominator - 1) == 0 else _ulp(m, prec)
            return cls(m, err, prec)
        if isinstance(value, str):
            return cls.exact(Fraction(value), prec)
        raise TypeError(f"cannot build an exact ball from {type(value).__name__}")

    @classmethod
    def from_interval(cls, lo, hi, prec: Optional[int] = None) -> "RealBall":
        """Ball containing the mpf interval ``[lo, hi]``."""
        prec = prec or default_precision()
        mid = mpf_div(mpf_add(lo, hi, prec + 8, round_nearest), from_int(2), prec, round_nearest)
        r1 = mpf_sub(hi, mid, RAD_PREC, round_ceiling)
        r2 = mpf_sub(mid, lo, RAD_PREC, round_ceiling)
        rad = r1 if mpf_cmp(r1, r2) >= 0 else r2
        if mpf_cmp(rad, fzero) < 0:
            rad = fzero
        return cls(mid, rad, prec)

    @classmethod
    def pi(cls, prec: Optional[int] = None) -> "RealBall":
        prec = prec or default_precision()
        m = libmp.mpf_pi(prec, round_nearest)
        return cls(m, _ulp(m, prec), prec)

    @classmethod
    def zero(cls, prec: Optional[int] = None) -> "RealBall":
        return cls(fzero, fzero, prec)

    # ----------------------------------------------------------------- accessors
    def with_prec(self, prec: int) -> "RealBall":
        return RealBall(self.mid, self.rad, prec)

    def lower(self):
        return mpf_sub(self.mid, self.rad, self.prec + 4, round_floor)

    def upper(self):
        return mpf_add(self.mid, self.rad, self.prec + 4, round_ceiling)

    def mid_float(self) -> float:
        return libmp.to_float(self.mid)

    def rad_float(self) -> float:
        return libmp.to_float(self.rad, rnd=round_ceiling)

    def __float__(self):
        return self.mid_float()

    def mid_str(self, digits: Optional[int] = None) -> str:
        digits = digits or max(15, int(self.prec * 0.30103) + 1)
        return to_str(self.mid, digits)

    def rad_str(self) -> str:
        """Radius printed with 6 significant digits, rounded upward."""
        if self.rad == fzero:
            return "0.0"
        bumped = mpf_mul(self.rad, from_rational(1000001, 1000000, RAD_PREC, round_ceiling), RAD_PREC, round_ceiling)
        return to_str(bumped, 6)

    def __repr__(self):
        return f"[{self.mid_str(20)} +/- {self.rad_str()}]"

    # ----------------------------------------------------------------- arithmetic
    def _coerce(self, other) -> "RealBall":
        if isinstance(other, RealBall):
            return other
        return RealBall.exact(other, self.prec)

    def _wp(self, other: "RealBall") -> int:
        return max(self.prec, other.prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = self._wp(other)
        m = mpf_add(self.mid, other.mid, prec, round_nearest)
        return RealBall(m, _radd(self.rad, other.rad, _ulp(m, prec)), prec)

    __radd__ = __add__

    def __neg__(self):
        return RealBall(mpf_neg(self.mid), self.rad, self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        prec = self._wp(other)
        m = mpf_sub(self.mid, other.mid, prec, round_nearest)
        return RealBall(m, _radd(self.rad, other.rad, _ulp(m, prec)), prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = self._wp(other)
        m = mpf_mul(self.mid, other.mid, prec, round_nearest)
        rad = _radd(
            _rmul(mpf_abs(self.mid), other.rad),
            _rmul(mpf_abs(other.mid), self.rad),
            _rmul(self.rad, other.rad),
            _ulp(m, prec),
        )
        return RealBall(m, rad, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        prec = self._wp(other)
        bm = mpf_abs(other.mid)
        gap = mpf_sub(bm, other.rad, RAD_PREC, round_floor)
        if mpf_cmp(gap, fzero) <= 0:
            raise ZeroDivisionError("division by a ball containing zero")
        m = mpf_div(self.mid, other.mid, prec, round_nearest)
        num = _radd(_rmul(mpf_abs(self.mid), other.rad), _rmul(bm, self.rad))
        den = mpf_mul(mpf_abs(other.mid), gap, RAD_PREC, round_floor)
        rad = _radd(mpf_div(num, den, RAD_PREC, round_ceiling), _ulp(m, prec))
        return RealBall(m, rad, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if isinstance(e, int):
            if e < 0:
                return 1 / (self ** (-e))
            out = RealBall.exact(1, self.prec)
            base = self
            while e:
                if e & 1:
                    out = out * base
                base = base * base
                e >>= 1
            return out
        return (self._coerce(e) * self.log()).exp()

    def sqr(self) -> "RealBall":
        a = self.abs()
        return a * a

    def abs(self) -> "RealBall":
        am = mpf_abs(self.mid)
        if mpf_cmp(am, self.rad) > 0:
            return RealBall(am, self.rad, self.prec)
        hi = mpf_add(am, self.rad, RAD_PREC, round_ceiling)
        return RealBall.from_interval(fzero, hi, self.prec)

    __abs__ = abs

    def sqrt(self) -> "RealBall":
        prec = self.prec
        lo = self.lower()
        if mpf_cmp(lo, fzero) <= 0:
            hi = self.upper()
            if mpf_cmp(hi, fzero) < 0:
                raise DomainError("sqrt of a negative ball")
            return RealBall.from_interval(fzero, mpf_sqrt(hi, prec, round_ceiling), prec)
        m = mpf_sqrt(self.mid, prec, round_nearest)
        den = mpf_add(mpf_sqrt(lo, RAD_PREC, round_floor), mpf_sqrt(self.mid, RAD_PREC, round_floor), RAD_PREC, round_floor)
        rad = _radd(mpf_div(self.rad, den, RAD_PREC, round_ceiling), _rmul(_ulp(m, prec), from_int(2)))
        return RealBall(m, rad, prec)

    def log(self) -> "RealBall":
        prec = self.prec
        lo = self.lower()
        if mpf_cmp(lo, fzero) <= 0:
            raise DomainError("log of a ball that is not strictly positive")
        m = mpf_log(self.mid, prec, round_nearest)
        rad = _radd(mpf_div(self.rad, lo, RAD_PREC, round_ceiling), _rmul(_ulp(m, prec), from_int(4)))
        return RealBall(m, rad, prec)

    def exp(self) -> "RealBall":
        prec = self.prec
        m = mpf_exp(self.mid, prec, round_nearest)
        top = mpf_exp(self.upper(), RAD_PREC, round_ceiling)
        rad = _radd(_rmul(top, self.rad), _rmul(_ulp(m, prec), from_int(4)))
        return RealBall(m, rad, prec)

    def log_plus(self) -> "RealBall":
        """``log max(1, x)`` for a ball of nonnegative reals."""
        one = from_int(1)
        if mpf_cmp(self.upper(), one) <= 0:
            return RealBall.zero(self.prec)
        if mpf_cmp(self.lower(), one) > 0:
            return self.log()
        hi = mpf_log(self.upper(), RAD_PREC, round_ceiling)
        return RealBall.from_interval(fzero, hi, self.prec)

    def max(self, other) -> "RealBall":
        other = self._coerce(other)
        lo = self.lower() if mpf_cmp(self.lower(), other.lower()) >= 0 else other.lower()
        hi = self.upper() if mpf_cmp(self.upper(), other.upper()) >= 0 else other.upper()
        if self.lower() == lo and self.upper() == hi:
            return self
        if other.lower() == lo and other.upper() == hi:
            return other
        return RealBall.from_interval(lo, hi, self._wp(other))

    def min(self, other) -> "RealBall":
        return -((-self).max(-self._coerce(other)))

    def clip_nonnegative(self) -> "RealBall":
        """Intersect with ``[0, inf)``; used for quantities known to be nonnegative."""
        if mpf_cmp(self.lower(), fzero) >= 0:
            return self
        hi = self.upper()
        if mpf_cmp(hi, fzero) < 0:
            raise DomainError("ball lies entirely below zero")
        return RealBall.from_interval(fzero, hi, self.prec)

    def union(self, other: "RealBall") -> "RealBall":
        lo = self.lower() if mpf_cmp(self.lower(), other.lower()) <= 0 else other.lower()
        hi = self.upper() if mpf_cmp(self.upper(), other.upper()) >= 0 else other.upper()
        return RealBall.from_interval(lo, hi, self._wp(other))

    def add_error(self, err) -> "RealBall":
        """Widen by ``err`` (float, Fraction, or mpf)."""
        if isinstance(err, float):
            e = libmp.from_float(err, RAD_PREC, round_ceiling)
        elif isinstance(err, Fraction):
            e = from_rational(err.numerator, err.denominator, RAD_PREC, round_ceiling)
        elif isinstance(err, int):
            e = from_int(err)
        else:
            e = err
        return RealBall(self.mid, _radd(self.rad, mpf_abs(e)), self.prec)

    # ----------------------------------------------------------------- comparisons
    def _cmp_bounds(self, other):
        other = self._coerce(other)
        return self.lower(), self.upper(), other.lower(), other.upper()

    def lt(self, other) -> Optional[bool]:
        """True if certainly ``<``, False if certainly ``>=``, None if undecided."""
        lo, hi, olo, ohi = self._cmp_bounds(other)
        if mpf_cmp(hi, olo) < 0:
            return True
        if mpf_cmp(lo, ohi) >= 0:
            return False
        return None

    def le(self, other) -> Optional[bool]:
        lo, hi, olo, ohi = self._cmp_bounds(other)
        if mpf_cmp(hi, olo) <= 0:
            return True
        if mpf_cmp(lo, ohi) > 0:
            return False
        return None

    def gt(self, other) -> Optional[bool]:
        r = self._coerce(other).lt(self)
        return r

    def ge(self, other) -> Optional[bool]:
        return self._coerce(other).le(self)

    def is_positive(self) -> Optional[bool]:
        return self.gt(0)

    def contains(self, value) -> bool:
        if isinstance(value, RealBall):
            return mpf_cmp(self.lower(), value.lower()) <= 0 and mpf_cmp(value.upper(), self.upper()) <= 0
        if isinstance(value, float):
            v = libmp.from_float(value)
        elif isinstance(value, Fraction):
            lo_q = Fraction(*libmp.to_rational(self.lower()))
            hi_q = Fraction(*libmp.to_rational(self.upper()))
            return lo_q <= value <= hi_q
        elif isinstance(value, int):
            v = from_int(value)
        else:
            v = value
        return mpf_cmp(self.lower(), v) <= 0 and mpf_cmp(v, self.upper()) <= 0

    def contains_zero(self) -> bool:
        return self.contains(0)

    def overlaps(self, other: "RealBall") -> bool:
        other = self._coerce(other)
        return mpf_cmp(self.lower(), other.upper()) <= 0 and mpf_cmp(other.lower(), self.upper()) <= 0

    def radius_le(self, tol) -> bool:
        t = libmp.from_float(float(tol)) if not isinstance(tol, tuple) else tol
        return mpf_cmp(self.rad, t) <= 0

    def floor_ceil(self):
        """(floor(lower), ceil(upper)) as Python ints."""
        lo = libmp.to_int(self.lower(), round_floor)
        hi = libmp.to_int(self.upper(), round_ceiling)
        return int(lo), int(hi)

    def ceil_exact(self) -> Optional[int]:
        """The ceiling when every point of the ball has the same ceiling, else None."""
        lo = self.lower()
        hi = self.upper()
        c_hi = libmp.to_int(hi, round_ceiling)
        c_lo = libmp.to_int(lo, round_ceiling)
        if c_hi == c_lo and mpf_cmp(lo, from_int(c_lo - 1)) > 0:
            return int(c_hi)
        return None


def log_ball(value, prec: Optional[int] = None) -> RealBall:
    """Logarithm of an exact positive int or Fraction."""
    return RealBall.exact(value, (prec or default_precision()) + 8).log().with_prec(prec or default_precision())


def ball_sum(items: Iterable[RealBall], prec: Optional[int] = None) -> RealBall:
    acc = RealBall.zero(prec)
    for b in items:
        acc = acc + b
    return acc


class ComplexBall:
    """Rectangular complex ball: independent real and imaginary RealBalls."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealBall, im: Optional[RealBall] = None):
        self.re = re
        self.im = im if im is not None else RealBall.zero(re.prec)

    @classmethod
    def exact(cls, value, prec: Optional[int] = None) -> "ComplexBall":
        if isinstance(value, ComplexBall):
            return value
        if isinstance(value, RealBall):
            return cls(value)
        if isinstance(value, complex):
            return cls(RealBall(libmp.from_float(value.real), fzero, prec), RealBall(libmp.from_float(value.imag), fzero, prec))
        return cls(RealBall.exact(value, prec), RealBall.zero(prec))

    @classmethod
    def from_mpc(cls, value, rad=fzero, prec: Optional[int] = None) -> "ComplexBall":
        """From an mpmath ``mpc``/``mpf`` midpoint with a common radius."""
        re, im = (value._mpc_ if hasattr(value, "_mpc_") else (value._mpf_, fzero))
        return cls(RealBall(re, rad, prec), RealBall(im, rad, prec))

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def _coerce(self, other) -> "ComplexBall":
        if isinstance(other, ComplexBall):
            return other
        return ComplexBall.exact(other, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        return ComplexBall(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        return ComplexBall(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RealBall)):
            return ComplexBall(self.re * other, self.im * other)
        other = self._coerce(other)
        return ComplexBall(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def abs2(self) -> RealBall:
        return self.re.sqr() + self.im.sqr()

    def abs(self) -> RealBall:
        return self.abs2().sqrt()

    __abs__ = abs

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RealBall)):
            return ComplexBall(self.re / other, self.im / other)
        other = self._coerce(other)
        d = other.abs2()
        n = self * other.conj()
        return ComplexBall(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        out = ComplexBall.exact(1, self.prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def overlaps(self, other: "ComplexBall") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def max_rad(self):
        return self.re.rad if mpf_cmp(self.re.rad, self.im.rad) >= 0 else self.im.rad

    def to_complex(self) -> complex:
        return complex(self.re.mid_float(), self.im.mid_float())

    def __repr__(self):
        return f"({self.re!r} + {self.im!r}*I)"
