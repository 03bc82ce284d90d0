"""Exact arithmetic in the Gaussian rationals Q(i).

Components are :class:`fractions.Fraction`, which are always stored in lowest
terms with a positive denominator, so ``str`` of a component is already the
canonical serialization (``"-5/6"``, ``"0"``, ``"3"``).

Mixing a :class:`GaussianRational` with a Python ``float`` or ``complex``
degrades to ``complex``; that is how the float backend piggybacks on the same
polynomial code.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["GaussianRational", "GR", "I", "as_exact", "is_exact", "to_complex"]

RationalLike = Union[int, Fraction]


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike | str = 0, im: RationalLike | str = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational exactly")

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        try:
            return cls(Fraction(_strict_rational(obj["re"])), Fraction(_strict_rational(obj["im"])))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed Gaussian rational {obj!r}") from exc

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    # field operations ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # conversions -----------------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


GR = GaussianRational
I = GaussianRational(0, 1)


def _strict_rational(s) -> str:
    # Only lowest-terms "p/q" or integer strings are admitted, so that
    # parse -> serialize is the identity on the wire.
    if not isinstance(s, str):
        raise TypeError("rational components are serialized as strings")
    if str(Fraction(s)) != s:
        raise ValueError(f"not a canonical rational: {s!r}")
    return s


def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, Rational)) and not isinstance(x, bool)


def as_exact(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def to_complex(x) -> complex:
    return complex(x)
