"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "GQ", "ZERO", "ONE", "I", "as_gq"]


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x))
    return mpq(x)


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Both parts are ``gmpy2.mpq`` values, which are always kept in lowest terms
    with a positive denominator, so structural equality is value equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(_ZERO_Q) else _to_mpq(re)
        self.im = im if type(im) is type(_ZERO_Q) else _to_mpq(im)

    # construction helpers -------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``3``, ``-1/2``, ``i``, ``-i``, ``2/3 i``, ``1 + 2 i``, ``1-i``."""
        m = _LITERAL.fullmatch(text.replace(" ", ""))
        if m is None:
            raise ValueError(f"not a Gaussian rational literal: {text!r}")
        real, imag = m.group("real"), m.group("imag")
        if real is None and imag is None:
            raise ValueError("empty Gaussian rational literal")
        if imag is None:
            return cls(Fraction(real))
        if imag in ("", "+"):
            im = Fraction(1)
        elif imag == "-":
            im = Fraction(-1)
        else:
            im = Fraction(imag)
        return cls(Fraction(real) if real else 0, im)

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = as_gq(other)
            if other is NotImplemented:
                return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = as_gq(other)
            if other is NotImplemented:
                return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gq(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = as_gq(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational(a * c, _ZERO_Q)
            return GaussianRational(a * c, a * d)
        if not d:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        if not self.im:
            return GaussianRational(1 / self.re, _ZERO_Q)
        norm = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = as_gq(other)
            if other is NotImplemented:
                return other
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gq(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            other = as_gq(other)
            if other is NotImplemented:
                return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # display ----------------------------------------------------------------

    def __str__(self):
        re_s, im = _fmt(self.re), self.im
        if not im:
            return re_s
        if im == 1:
            im_s = "i"
        elif im == -1:
            im_s = "-i"
        else:
            im_s = f"{_fmt(im)} i"
        if not self.re:
            return im_s
        if im_s.startswith("-"):
            return f"{re_s} - {im_s[1:]}"
        return f"{re_s} + {im_s}"

    def __repr__(self):
        return f"GQ({self})"

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


_ZERO_Q = mpq(0)
_RAT = r"-?\d+(?:/\d+)?"
_LITERAL = re.compile(
    rf"(?P<real>{_RAT})?"
    rf"(?:(?P<imag>(?(real)[+-]|[+-]?)(?:\d+(?:/\d+)?)?)\*?i)?"
)


def _fmt(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_gq(x):
    """Coerce ints, Fractions and mpq values; NotImplemented for anything else."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction, Rational)) or type(x) is type(_ZERO_Q):
        return GaussianRational(x)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


GQ = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
