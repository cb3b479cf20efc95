"""Piecewise-linear functions of one rational variable as expression trees.

Every node evaluates exactly and can list a *superset* of its breakpoints on
any bounded window.  Between two consecutive listed points a node is affine,
so slopes, slope jumps and root/pole events all follow from evaluation alone.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .scalar import BOTTOM, DomainError, TropScalar, as_rational, as_scalar

__all__ = [
    "PLFunction",
    "Const",
    "Linear",
    "FinitePL",
    "Max",
    "Sum",
    "Scale",
    "Shift",
    "Undefined",
    "BreakpointEvent",
    "lattice",
    "oplus",
    "tmax",
    "tmin",
    "otimes",
    "oslash",
    "power",
    "shift",
    "eval_at",
    "one_sided_slopes",
    "omega_jump",
    "events_in",
    "is_entire_on",
    "sample_points",
]


def lattice(offset, step, lo, hi) -> list[Fraction]:
    """Points ``offset + k*step`` (k integer) lying in ``[lo, hi]``."""
    offset, step = Fraction(offset), Fraction(step)
    if step <= 0:
        raise ValueError("lattice step must be positive")
    k0 = math.ceil((lo - offset) / step)
    k1 = math.floor((hi - offset) / step)
    return [offset + k * step for k in range(k0, k1 + 1)]


def _window(points: Iterable[Fraction], lo: Fraction, hi: Fraction) -> list[Fraction]:
    return sorted({p for p in points if lo <= p <= hi})


class PLFunction(ABC):
    """A continuous piecewise-linear function, or the constant ``-inf``."""

    #: True iff the function is identically ``-inf``.  Bottom-ness is decided
    #: at construction time; no node is bottom on part of the line only.
    is_bottom = False

    def __call__(self, x) -> TropScalar:
        return self._eval(as_rational(x))

    @abstractmethod
    def _eval(self, x: Fraction) -> TropScalar:
        ...

    @abstractmethod
    def breakpoints(self, lo, hi) -> list[Fraction]:
        """Sorted candidate breakpoints in ``[lo, hi]`` (may contain extras)."""

    def to_doc(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no document form")

    # Operator sugar: + is tropical product, * by a rational is a tropical power.
    def __add__(self, other):
        return otimes(self, _lift(other))

    def __radd__(self, other):
        return otimes(_lift(other), self)

    def __sub__(self, other):
        return oslash(self, _lift(other))

    def __rsub__(self, other):
        return oslash(_lift(other), self)

    def __neg__(self):
        return Scale(-1, self)

    def __mul__(self, factor):
        return power(self, factor)

    __rmul__ = __mul__

    def shift(self, offset) -> "PLFunction":
        return shift(self, offset)


def _lift(x) -> PLFunction:
    if isinstance(x, PLFunction):
        return x
    return Const(as_scalar(x))


class Const(PLFunction):
    def __init__(self, value=0):
        self.value = as_scalar(value)
        self.is_bottom = self.value is BOTTOM

    def _eval(self, x):
        return self.value

    def breakpoints(self, lo, hi):
        return []

    def to_doc(self):
        return {"kind": "const", "value": str(self.value)}

    def __repr__(self):
        return f"Const({self.value})"


class Linear(PLFunction):
    """``x -> slope*x + intercept``."""

    def __init__(self, slope, intercept=0):
        self.slope = as_rational(slope)
        self.intercept = as_rational(intercept)

    def _eval(self, x):
        return self.slope * x + self.intercept

    def breakpoints(self, lo, hi):
        return []

    def to_doc(self):
        return {"kind": "linear", "slope": str(self.slope), "intercept": str(self.intercept)}

    def __repr__(self):
        return f"Linear({self.slope}, {self.intercept})"


class FinitePL(PLFunction):
    """Finitely many vertices joined by segments, with affine tails on both sides."""

    def __init__(self, points: Sequence, left_slope=0, right_slope=0):
        pts = [(as_rational(x), as_rational(v)) for x, v in points]
        if not pts:
            raise ValueError("FinitePL needs at least one vertex")
        xs = [x for x, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("FinitePL vertices must be strictly increasing")
        self.points = tuple(pts)
        self.xs = xs
        self.left_slope = as_rational(left_slope)
        self.right_slope = as_rational(right_slope)

    def _eval(self, x):
        pts = self.points
        if x <= pts[0][0]:
            return pts[0][1] + self.left_slope * (x - pts[0][0])
        if x >= pts[-1][0]:
            return pts[-1][1] + self.right_slope * (x - pts[-1][0])
        i = bisect_right(self.xs, x)
        (x0, v0), (x1, v1) = pts[i - 1], pts[i]
        return v0 + (v1 - v0) * (x - x0) / (x1 - x0)

    def breakpoints(self, lo, hi):
        return self.xs[bisect_left(self.xs, lo):bisect_right(self.xs, hi)]

    def to_doc(self):
        return {
            "kind": "finite_pl",
            "points": [[str(x), str(v)] for x, v in self.points],
            "left_slope": str(self.left_slope),
            "right_slope": str(self.right_slope),
        }

    def __repr__(self):
        return f"FinitePL({len(self.points)} vertices)"


class Max(PLFunction):
    """Pointwise maximum (tropical sum) of finite children.

    Use :func:`oplus` or :func:`tmax`, which drop ``-inf`` children first.
    """

    def __init__(self, children: Sequence[PLFunction]):
        if not children or any(c.is_bottom for c in children):
            raise ValueError("Max children must be finite functions")
        self.children = tuple(children)

    def _eval(self, x):
        return max(c._eval(x) for c in self.children)

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        own = set()
        for c in self.children:
            own.update(c.breakpoints(lo, hi))
        pts = sorted(own | {lo, hi})
        vals = [[c._eval(p) for p in pts] for c in self.children]
        # crossings of two children inside a cell where both are affine
        for i in range(len(pts) - 1):
            a, b = pts[i], pts[i + 1]
            for u, v in combinations(vals, 2):
                da, db = u[i] - v[i], u[i + 1] - v[i + 1]
                if da * db < 0:
                    own.add(a + (b - a) * da / (da - db))
        return _window(own, lo, hi)

    def to_doc(self):
        return {"kind": "max", "children": [c.to_doc() for c in self.children]}

    def __repr__(self):
        return f"Max({', '.join(map(repr, self.children))})"


class Sum(PLFunction):
    """Pointwise sum (tropical product); ``-inf`` if any child is."""

    def __init__(self, children: Sequence[PLFunction]):
        if not children:
            raise ValueError("Sum needs at least one child")
        self.children = tuple(children)
        self.is_bottom = any(c.is_bottom for c in self.children)

    def _eval(self, x):
        if self.is_bottom:
            return BOTTOM
        return sum((c._eval(x) for c in self.children), Fraction(0))

    def breakpoints(self, lo, hi):
        out = set()
        for c in self.children:
            out.update(c.breakpoints(lo, hi))
        return sorted(out)

    def to_doc(self):
        return {"kind": "sum", "children": [c.to_doc() for c in self.children]}

    def __repr__(self):
        return f"Sum({', '.join(map(repr, self.children))})"


class Scale(PLFunction):
    """``x -> factor * child(x)`` (tropical power); ``-inf`` stays ``-inf``."""

    def __init__(self, factor, child: PLFunction):
        self.factor = as_rational(factor)
        self.child = child
        self.is_bottom = child.is_bottom

    def _eval(self, x):
        v = self.child._eval(x)
        return BOTTOM if v is BOTTOM else self.factor * v

    def breakpoints(self, lo, hi):
        return self.child.breakpoints(lo, hi)

    def to_doc(self):
        return {"kind": "scale", "factor": str(self.factor), "child": self.child.to_doc()}

    def __repr__(self):
        return f"Scale({self.factor}, {self.child!r})"


class Shift(PLFunction):
    """``x -> child(x + offset)``."""

    def __init__(self, offset, child: PLFunction):
        self.offset = as_rational(offset)
        self.child = child
        self.is_bottom = child.is_bottom

    def _eval(self, x):
        return self.child._eval(x + self.offset)

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        return [p - self.offset for p in self.child.breakpoints(lo + self.offset, hi + self.offset)]

    def to_doc(self):
        return {"kind": "shift", "offset": str(self.offset), "child": self.child.to_doc()}

    def __repr__(self):
        return f"Shift({self.offset}, {self.child!r})"


class Undefined(PLFunction):
    """Result of dividing by the tropical zero; evaluation raises."""

    def __init__(self, reason: str):
        self.reason = reason

    def _eval(self, x):
        raise DomainError(self.reason)

    def breakpoints(self, lo, hi):
        return []


# ---------------------------------------------------------------------------
# semiring operations on functions


def tmax(*fs: PLFunction) -> PLFunction:
    finite = [f for f in fs if not f.is_bottom]
    if not finite:
        return Const(BOTTOM)
    if len(finite) == 1:
        return finite[0]
    return Max(finite)


def oplus(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical sum: the pointwise maximum."""
    return tmax(f, g)


def tmin(*fs: PLFunction) -> PLFunction:
    """Pointwise minimum of finite functions, as ``-max(-f, ...)``."""
    if any(f.is_bottom for f in fs):
        return Const(BOTTOM)
    return Scale(-1, tmax(*(Scale(-1, f) for f in fs)))


def otimes(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical product: the pointwise sum."""
    if f.is_bottom or g.is_bottom:
        return Const(BOTTOM)
    return Sum([f, g])


def oslash(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical quotient ``f - g``; undefined where ``g`` is ``-inf``."""
    if g.is_bottom:
        return Undefined("tropical division by -inf")
    if f.is_bottom:
        return Const(BOTTOM)
    return Sum([f, Scale(-1, g)])


def power(f: PLFunction, alpha) -> PLFunction:
    """Tropical power ``f^alpha``, i.e. ``alpha * f``."""
    return Scale(alpha, f)


def shift(f: PLFunction, offset) -> PLFunction:
    """Translate: ``x -> f(x + offset)``."""
    return Shift(offset, f)


def eval_at(f: PLFunction, x) -> TropScalar:
    return f(x)


# ---------------------------------------------------------------------------
# slopes and events


@dataclass(frozen=True)
class BreakpointEvent:
    """A slope discontinuity: ``jump`` is right slope minus left slope."""

    location: Fraction
    jump: Fraction

    @property
    def kind(self) -> str:
        return "root" if self.jump > 0 else "pole"

    @property
    def multiplicity(self) -> Fraction:
        return abs(self.jump)

    def to_dict(self) -> dict:
        return {
            "location": str(self.location),
            "jump": str(self.jump),
            "kind": self.kind,
            "multiplicity": str(self.multiplicity),
        }


def _require_finite(f: PLFunction):
    if f.is_bottom:
        raise DomainError("slopes of the constant -inf are undefined")


def _profile(f: PLFunction, lo: Fraction, hi: Fraction, *extra: Fraction):
    """Sorted points covering ``[lo, hi]`` with f affine between neighbours."""
    pts = _window(list(f.breakpoints(lo, hi)) + [lo, hi, *extra], lo, hi)
    return pts, [f._eval(p) for p in pts]


def one_sided_slopes(f: PLFunction, x) -> tuple[Fraction, Fraction]:
    """``(left, right)`` derivative of ``f`` at ``x``."""
    _require_finite(f)
    x = as_rational(x)
    pts, vals = _profile(f, x - 1, x + 1, x)
    i = pts.index(x)
    left = (vals[i] - vals[i - 1]) / (pts[i] - pts[i - 1])
    right = (vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
    return left, right


def omega_jump(f: PLFunction, x0) -> Fraction:
    """Right slope minus left slope at ``x0`` (positive: root, negative: pole)."""
    left, right = one_sided_slopes(f, x0)
    return right - left


def events_in(f: PLFunction, lo, hi, *, closed: bool = False) -> list[BreakpointEvent]:
    """All points of nonzero slope jump in ``(lo, hi)`` (``[lo, hi]`` if closed)."""
    _require_finite(f)
    lo, hi = as_rational(lo), as_rational(hi)
    if lo >= hi:
        raise ValueError("events_in needs lo < hi")
    pts, vals = _profile(f, lo - 1, hi + 1)
    slopes = [(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i]) for i in range(len(pts) - 1)]
    out = []
    for i in range(1, len(pts) - 1):
        p = pts[i]
        inside = lo <= p <= hi if closed else lo < p < hi
        if inside and slopes[i] != slopes[i - 1]:
            out.append(BreakpointEvent(p, slopes[i] - slopes[i - 1]))
    return out


def is_entire_on(f: PLFunction, lo, hi) -> bool:
    """True iff ``f`` has no pole in ``(lo, hi)``."""
    return all(e.jump > 0 for e in events_in(f, lo, hi))


def sample_points(f: PLFunction, lo, hi) -> list[Fraction]:
    """Breakpoints, endpoints and cell midpoints of ``f`` on ``[lo, hi]``.

    A piecewise-linear identity that holds at all of these holds on the window.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    pts = _window(list(f.breakpoints(lo, hi)) + [lo, hi], lo, hi)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return sorted(pts + mids)
