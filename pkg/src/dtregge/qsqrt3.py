"""Exact arithmetic in the quadratic field Q[sqrt(3)].

Numbers are stored as a + b*sqrt(3) with rational a, b.  Division and
comparison are exact; floats appear only when the caller explicitly asks
for them.
"""

from __future__ import annotations

import math
from fractions import Fraction


class QSqrt3:
    """An element a + b*sqrt(3) of Q[sqrt(3)]."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def sqrt3(cls, coeff=1):
        return cls(0, coeff)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt3(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # 1/(a + b*sqrt3) = (a - b*sqrt3)/(a^2 - 3 b^2)
        norm = other.a * other.a - 3 * other.b * other.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt(3)]")
        inv = QSqrt3(other.a / norm, -other.b / norm)
        return self * inv

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sign(self):
        """Exact sign of the real value a + b*sqrt(3)."""
        if self.b == 0:
            return _sign(self.a)
        if self.a == 0:
            return _sign(self.b)
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == sb:
            return sa
        # a and b have opposite signs: compare a^2 with 3 b^2
        cmp = _sign(self.a * self.a - 3 * self.b * self.b)
        return sa * cmp

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return _coerce(other) < self

    def __ge__(self, other):
        return _coerce(other) <= self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(3)

    def __repr__(self):
        if self.b == 0:
            return f"QSqrt3({self.a})"
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt(3)"
        return f"{self.a} + {self.b}*sqrt(3)"


def _coerce(x):
    if isinstance(x, QSqrt3):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt3(x)
    return NotImplemented


def _sign(x):
    return (x > 0) - (x < 0)
