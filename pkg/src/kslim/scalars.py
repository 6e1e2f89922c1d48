"""Exact scalars over Q and the Gaussian rationals Q(i).

Rationals are plain :class:`fractions.Fraction` values. Gaussian rationals are
:class:`GaussianRational` values holding a pair of fractions. Arithmetic between
the two promotes to Q(i); nothing here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        if isinstance(re, GaussianRational) or isinstance(im, GaussianRational):
            raise TypeError("parts of a Gaussian rational must be rational")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


Scalar = Union[int, Fraction, GaussianRational]

I = GaussianRational(0, 1)


def conj(x: Scalar) -> Scalar:
    """Complex conjugation; the identity on Q."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def real_part(x: Scalar) -> Fraction:
    if isinstance(x, GaussianRational):
        return x.re
    return Fraction(x)


def imag_part(x: Scalar) -> Fraction:
    if isinstance(x, GaussianRational):
        return x.im
    return Fraction(0)


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def as_rational(x: Scalar) -> Fraction:
    """Return ``x`` as a Fraction, raising if it has an imaginary part."""
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"{x} is not rational")
        return x.re
    return Fraction(x)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints are accepted too). Floats are refused."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"refusing inexact literal {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(s)


def parse_gaussian(pair) -> Scalar:
    """Parse an ``[re, im]`` pair of rational literals."""
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"Gaussian rational must be an [re, im] pair, got {pair!r}")
    re, im = parse_rational(pair[0]), parse_rational(pair[1])
    return GaussianRational(re, im) if im else re


def format_rational(x: Scalar) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(as_rational(x))


def format_gaussian(x: Scalar) -> list[str]:
    return [str(real_part(x)), str(imag_part(x))]
