"""Scalars over R, C, H, and Q(i): exact rational components or floats.

Every scalar is stored as a quaternion a + b*i + c*j + d*k.  Real and complex
values simply have vanishing j/k (and i) parts.  Components are either all
`fractions.Fraction` (exact) or all `float`; mixing coerces to float.

Multiplication is the quaternion product and is NOT assumed commutative
anywhere.  Division is therefore provided explicitly in both flavours:
`rdiv(a, b) = a * b**-1` and `ldiv(b, a) = b**-1 * a`.  The `/` operator is
right division, which is safe for commutative scalars; quaternion-sensitive
code spells the side out.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]


def _coerce_pair(x: "Scalar", y: "Scalar"):
    if x.exact == y.exact:
        return x, y
    if x.exact:
        return x.to_float(), y
    return x, y.to_float()


class Scalar:
    """A quaternion with exact-rational or float components."""

    __slots__ = ("a", "b", "c", "d", "exact")

    def __init__(self, a, b=0, c=0, d=0):
        if isinstance(a, float) or isinstance(b, float) or isinstance(c, float) or isinstance(d, float):
            self.a, self.b, self.c, self.d = float(a), float(b), float(c), float(d)
            self.exact = False
        else:
            self.a, self.b = Fraction(a), Fraction(b)
            self.c, self.d = Fraction(c), Fraction(d)
            self.exact = True

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return Scalar(0)

    @staticmethod
    def one() -> "Scalar":
        return Scalar(1)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_real(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def is_complex(self) -> bool:
        return self.c == 0 and self.d == 0

    def is_imaginary(self) -> bool:
        return self.a == 0 and self.c == 0 and self.d == 0

    def to_float(self) -> "Scalar":
        if not self.exact:
            return self
        return Scalar(float(self.a), float(self.b), float(self.c), float(self.d))

    def to_complex(self) -> complex:
        if self.c != 0 or self.d != 0:
            raise ValueError("scalar has nonzero j/k parts")
        return complex(float(self.a), float(self.b))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        x, y = _coerce_pair(self, other)
        return Scalar(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d)

    def __sub__(self, other: "Scalar") -> "Scalar":
        x, y = _coerce_pair(self, other)
        return Scalar(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "Scalar") -> "Scalar":
        x, y = _coerce_pair(self, other)
        a1, b1, c1, d1 = x.a, x.b, x.c, x.d
        a2, b2, c2, d2 = y.a, y.b, y.c, y.d
        return Scalar(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conj(self) -> "Scalar":
        return Scalar(self.a, -self.b, -self.c, -self.d)

    def norm2(self):
        """Squared norm a^2 + b^2 + c^2 + d^2 (exact when the scalar is)."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm2()))

    def inv(self) -> "Scalar":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("scalar is zero")
        return Scalar(self.a / n, -self.b / n, -self.c / n, -self.d / n)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        # right division a * b^-1; sides coincide for commutative scalars
        return self * other.inv()

    def rdiv(self, other: "Scalar") -> "Scalar":
        """self * other^-1."""
        return self * other.inv()

    def ldiv(self, other: "Scalar") -> "Scalar":
        """self^-1 * other."""
        return self.inv() * other

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def close_to(self, other: "Scalar", tol: float) -> bool:
        return abs(self - other) <= tol

    def __repr__(self) -> str:
        parts = []
        for coeff, unit in ((self.a, ""), (self.b, "i"), (self.c, "j"), (self.d, "k")):
            if coeff != 0:
                parts.append(f"{coeff}{unit}")
        return "Scalar(" + (" + ".join(parts) if parts else "0") + ")"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
J = Scalar(0, 0, 1)
K = Scalar(0, 0, 0, 1)


def rational(x: Number) -> Scalar:
    """Exact real rational scalar."""
    return Scalar(Fraction(x))


def qi(re: Number, im: Number = 0) -> Scalar:
    """Exact Gaussian-rational scalar re + im*i."""
    return Scalar(Fraction(re), Fraction(im))


def quat(a: Number, b: Number = 0, c: Number = 0, d: Number = 0) -> Scalar:
    """Exact rational quaternion a + b*i + c*j + d*k."""
    return Scalar(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


def flt(x) -> Scalar:
    """Float real scalar."""
    return Scalar(float(x))


def cflt(re, im=0.0) -> Scalar:
    """Float complex scalar."""
    return Scalar(float(re), float(im))
