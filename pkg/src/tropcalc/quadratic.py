"""Exact arithmetic in a quadratic field ``Q(sqrt(D))``.

Only what the solver needs: the ring operations, integer powers and the
Galois conjugate.  ``D`` is any rational that is not a perfect square; it is
kept as given, so two numbers combine only when their radicands are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalar import as_rational


def is_rational_square(q: Fraction) -> bool:
    q = as_rational(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a rational square."""
    q = as_rational(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


@dataclass(frozen=True)
class QuadSurd:
    """The number ``a + b*sqrt(D)``."""

    a: Fraction
    b: Fraction
    D: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "D", as_rational(self.D))
        if is_rational_square(self.D):
            raise ValueError("radicand must not be a rational square")

    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.D != self.D:
                raise ValueError("mismatched radicands")
            return other
        return QuadSurd(as_rational(other), 0, self.D)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a * o.a + self.b * o.b * self.D, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.D)

    def inverse(self) -> "QuadSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in a quadratic field")
        return QuadSurd(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        base = self if k >= 0 else self.inverse()
        result = QuadSurd(1, 0, self.D)
        for bit in bin(abs(k))[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def trace(self) -> Fraction:
        """Sum with the conjugate, ``2a``."""
        return 2 * self.a

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(float(self.D)) if self.D > 0 else float("nan")

    def to_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "D": str(self.D)}

    @classmethod
    def from_dict(cls, doc: dict) -> "QuadSurd":
        return cls(as_rational(doc["a"]), as_rational(doc["b"]), as_rational(doc["D"]))

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.D})"


def quadratic_roots(a, b, c):
    """Roots of ``a*l^2 + b*l + c``.

    Returns a pair of rationals when the discriminant is a rational square,
    otherwise the conjugate pair as :class:`QuadSurd` over ``Q(sqrt(disc))``.
    """
    a, b, c = map(as_rational, (a, b, c))
    disc = b * b - 4 * a * c
    if is_rational_square(disc):
        s = rational_sqrt(disc)
        return (-b - s) / (2 * a), (-b + s) / (2 * a)
    r = QuadSurd(-b / (2 * a), 1 / (2 * a), disc)
    return r, r.conjugate()
