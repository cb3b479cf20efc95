"""Max-plus scalars: exact rationals extended by a bottom element.

The carrier is ``Fraction`` together with the singleton :data:`BOTTOM`, which
plays the part of minus infinity (the neutral element of tropical addition).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class DomainError(ArithmeticError):
    """Raised when an expression has no value in the max-plus carrier."""


class _Bottom:
    """Minus infinity. Compares below every rational and absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_Bottom, ())

    def __hash__(self) -> int:
        return hash("tropcalc.BOTTOM")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise DomainError("-inf - (-inf) is undefined")
        return self

    def __rsub__(self, other):
        raise DomainError("cannot subtract -inf")

    def __neg__(self):
        raise DomainError("-(-inf) is not in the max-plus carrier")

    def __mul__(self, factor):
        return self

    __rmul__ = __mul__


BOTTOM = _Bottom()

TropScalar = Union[Fraction, _Bottom]

#: Neutral element of tropical addition.
ZERO = BOTTOM
#: Neutral element of tropical multiplication.
ONE = Fraction(0)


def as_rational(x) -> Fraction:
    """Coerce ``x`` to a ``Fraction``; floats are refused to keep results exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def as_scalar(x) -> TropScalar:
    """Like :func:`as_rational` but also accepts ``BOTTOM`` and ``"-inf"``."""
    if x is BOTTOM:
        return BOTTOM
    if isinstance(x, str) and x.strip().lower() in ("-inf", "bottom"):
        return BOTTOM
    return as_rational(x)


def is_bottom(x) -> bool:
    return x is BOTTOM


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    return a if a >= b else b


def otimes(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def oslash(a: TropScalar, b: TropScalar) -> TropScalar:
    if b is BOTTOM:
        raise DomainError("division by the tropical zero")
    if a is BOTTOM:
        return BOTTOM
    return a - b


def tpower(a: TropScalar, alpha) -> TropScalar:
    """``a`` to the tropical power ``alpha``, i.e. ``alpha * a``."""
    alpha = as_rational(alpha)
    if a is BOTTOM:
        if alpha > 0:
            return BOTTOM
        raise DomainError("non-positive tropical power of -inf")
    return alpha * a


def fmt(x: TropScalar) -> str:
    """Render a scalar as ``"p/q"``, ``"p"`` or ``"-inf"``."""
    if x is BOTTOM:
        return "-inf"
    return str(as_rational(x))
