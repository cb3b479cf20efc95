"""Named special functions: periodic profiles, tropical exponentials and the
ladder of particular solutions (Psi, Phi, Theta, Omega, Upsilon).

Each generator is a :class:`~tropcalc.core.PLFunction` with a closed-form
value and a closed-form breakpoint lattice.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Const, PLFunction, Scale, Sum, lattice
from .quadratic import QuadSurd
from .scalar import as_rational

__all__ = [
    "PeriodicProfile",
    "AntiPeriodicProfile",
    "PeriodicFn",
    "Sawtooth",
    "Notch",
    "AntiPeriodicFn",
    "TropExp",
    "QuadExp",
    "Psi",
    "PhiFn",
    "ThetaFn",
    "OmegaFn",
    "Upsilon",
    "Bracket",
    "sawtooth",
    "notch",
    "trop_exp",
    "exp_combination",
    "psi",
    "phi",
    "theta",
    "omega_special",
    "upsilon",
    "bracket",
    "periodic_from_profile",
    "antiperiodic_from_profile",
    "xi_triangle",
    "find_zero",
    "floor",
]


def floor(x: Fraction) -> int:
    """The integer part ``[x]``."""
    return math.floor(x)


def _interp(xs: list[Fraction], pts: Sequence[tuple[Fraction, Fraction]], end_value: Fraction,
            length: Fraction, t: Fraction) -> Fraction:
    """Value at ``t`` in ``[0, length)`` of the polyline through ``pts`` closed by ``(length, end_value)``."""
    i = bisect_right(xs, t) - 1
    x0, v0 = pts[i]
    if i + 1 < len(pts):
        x1, v1 = pts[i + 1]
    else:
        x1, v1 = length, end_value
    return v0 + (v1 - v0) * (t - x0) / (x1 - x0)


def _clean_points(points, length: Fraction, closing: Fraction | None):
    """Validate a profile and drop an explicit closing vertex at ``t = length``.

    ``closing`` maps the value at 0 to the required value at ``length``.
    """
    pts = [(as_rational(t), as_rational(v)) for t, v in points]
    if not pts or pts[0][0] != 0:
        raise ValueError("a profile must start with a vertex at t = 0")
    if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
        raise ValueError("profile vertices must be strictly increasing")
    if pts[-1][0] > length:
        raise ValueError(f"profile vertex beyond the period {length}")
    if pts[-1][0] == length:
        want = closing
        got = pts[-1][1]
        if got != want:
            raise ValueError(
                f"seam mismatch: limit at t -> {length} is {got}, extension requires {want}"
            )
        pts = pts[:-1]
    return tuple(pts)


@dataclass(frozen=True)
class PeriodicProfile:
    """One period ``[0, period)`` of a continuous periodic function.

    A vertex at ``t = period`` may be given; it must repeat the value at 0.
    """

    points: tuple
    period: Fraction = Fraction(1)

    def __post_init__(self):
        period = as_rational(self.period)
        if period <= 0:
            raise ValueError("period must be positive")
        raw = [(as_rational(t), as_rational(v)) for t, v in self.points]
        v0 = raw[0][1] if raw else None
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "points", _clean_points(raw, period, v0))

    @property
    def d(self) -> Fraction:
        """The value at the origin."""
        return self.points[0][1]

    def value(self, t: Fraction) -> Fraction:
        xs = [p[0] for p in self.points]
        return _interp(xs, self.points, self.d, self.period, t)

    def to_dict(self) -> dict:
        return {"points": [[str(t), str(v)] for t, v in self.points], "period": str(self.period)}


@dataclass(frozen=True)
class AntiPeriodicProfile:
    """One half-period ``[0, h)`` of a function with ``f(x + h) = -f(x)``."""

    points: tuple
    half_period: Fraction = Fraction(1)

    def __post_init__(self):
        h = as_rational(self.half_period)
        if h <= 0:
            raise ValueError("half period must be positive")
        raw = [(as_rational(t), as_rational(v)) for t, v in self.points]
        v0 = -raw[0][1] if raw else None
        object.__setattr__(self, "half_period", h)
        object.__setattr__(self, "points", _clean_points(raw, h, v0))

    def value(self, t: Fraction) -> Fraction:
        xs = [p[0] for p in self.points]
        return _interp(xs, self.points, -self.points[0][1], self.half_period, t)

    @property
    def x0(self) -> Fraction:
        """The first zero in ``[0, h)``; it exists since the ends have opposite signs."""
        return find_zero(self)

    def to_dict(self) -> dict:
        return {
            "points": [[str(t), str(v)] for t, v in self.points],
            "half_period": str(self.half_period),
        }


def find_zero(profile: AntiPeriodicProfile) -> Fraction:
    """Exact first zero of an anti-periodic profile on ``[0, h)``."""
    pts = list(profile.points) + [(profile.half_period, -profile.points[0][1])]
    for (a, va), (b, vb) in zip(pts, pts[1:]):
        if va == 0:
            return a
        if va * vb < 0:
            return a + (b - a) * va / (va - vb)
    raise AssertionError("anti-periodic profile without a zero")  # unreachable


# ---------------------------------------------------------------------------
# periodic generators


class PeriodicFn(PLFunction):
    """Periodic extension of a :class:`PeriodicProfile`."""

    def __init__(self, profile: PeriodicProfile):
        self.profile = profile
        self._xs = [p[0] for p in profile.points]

    def _eval(self, x):
        p = self.profile.period
        t = x - floor(x / p) * p
        return _interp(self._xs, self.profile.points, self.profile.d, p, t)

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        out = set()
        for t in self._xs:
            out.update(lattice(t, self.profile.period, lo, hi))
        return sorted(out)

    def to_doc(self):
        return {"kind": "periodic", **self.profile.to_dict()}

    def __repr__(self):
        return f"PeriodicFn({len(self._xs)} vertices, period {self.profile.period})"


class Sawtooth(PeriodicFn):
    """``pi^(a,b)(x) = min(a t, b (1 - t)) / (a + b)`` with ``t = x - [x]``."""

    def __init__(self, a, b):
        a, b = as_rational(a), as_rational(b)
        if a <= 0 or b <= 0:
            raise ValueError("sawtooth parameters must be positive")
        self.a, self.b = a, b
        peak = b / (a + b)
        super().__init__(PeriodicProfile(((0, 0), (peak, a * b / (a + b) ** 2))))

    def to_doc(self):
        return {"kind": "sawtooth", "a": str(self.a), "b": str(self.b)}

    def __repr__(self):
        return f"Sawtooth({self.a}, {self.b})"


class Notch(PeriodicFn):
    """``pi_a(x) = max((1 - a)([x] - x), a([-x] + x))``, a 1-periodic V with poles at the integers."""

    def __init__(self, a):
        a = as_rational(a)
        if not 0 <= a < 1:
            raise ValueError("notch parameter must lie in [0, 1)")
        self.a = a
        # a = 0 degenerates to the zero function
        pts = ((0, 0), (a, -a * (1 - a))) if a else ((0, 0),)
        super().__init__(PeriodicProfile(pts))

    def to_doc(self):
        return {"kind": "notch", "a": str(self.a)}

    def __repr__(self):
        return f"Notch({self.a})"


class AntiPeriodicFn(PLFunction):
    """Extension of an :class:`AntiPeriodicProfile` by ``f(x + h) = -f(x)``."""

    def __init__(self, profile: AntiPeriodicProfile):
        self.profile = profile
        self._xs = [p[0] for p in profile.points]

    def _eval(self, x):
        h = self.profile.half_period
        k = floor(x / h)
        v = self.profile.value(x - k * h)
        return -v if k % 2 else v

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        out = set()
        for t in self._xs:
            out.update(lattice(t, self.profile.half_period, lo, hi))
        return sorted(out)

    @property
    def x0(self) -> Fraction:
        return self.profile.x0

    def to_doc(self):
        return {"kind": "antiperiodic", **self.profile.to_dict()}

    def __repr__(self):
        return f"AntiPeriodicFn(half period {self.profile.half_period})"


# ---------------------------------------------------------------------------
# exponentials


_BAD_BASE_HINT = {
    1: "base 1 gives the 1-periodic family; use a periodic profile instead",
    -1: "base -1 gives the anti-periodic family; use an anti-periodic profile instead",
    0: "base 0 has no tropical exponential",
}


class TropExp(PLFunction):
    """``x -> e_base(x / step - shift)``.

    ``e_a(y) = a^[y] (y - [y] + 1/(a - 1))`` for ``|a| > 1`` and
    ``e_b(y) = b^[y] (1/(1 - b) - y + [y])`` for ``|b| < 1``; both satisfy
    ``e(y + 1) = base * e(y)`` and vanish nowhere except when the base is negative.
    """

    def __init__(self, base, step=1, shift=0):
        base = as_rational(base)
        if base in _BAD_BASE_HINT:
            raise ValueError(f"tropical exponential undefined for base {base}: {_BAD_BASE_HINT[int(base)]}")
        self.base = base
        self.step = as_rational(step)
        if self.step <= 0:
            raise ValueError("step must be positive")
        self.shift = as_rational(shift)

    def _eval(self, x):
        y = x / self.step - self.shift
        k = floor(y)
        t = y - k
        a = self.base
        if abs(a) > 1:
            return a ** k * (t + 1 / (a - 1))
        return a ** k * (1 / (1 - a) - t)

    def breakpoints(self, lo, hi):
        return lattice(self.shift * self.step, self.step, as_rational(lo), as_rational(hi))

    @property
    def zero_offset(self) -> Fraction:
        """``z`` in ``[0, 1)`` with ``e_base(z) = 0`` (exists only for negative bases)."""
        if self.base > 0:
            raise ValueError("exponentials with positive base have no zeros")
        return 1 / (1 - self.base)

    def to_doc(self):
        doc = {"kind": "exp", "base": str(self.base)}
        if self.step != 1:
            doc["step"] = str(self.step)
        if self.shift != 0:
            doc["shift"] = str(self.shift)
        return doc

    def __repr__(self):
        return f"TropExp({self.base}, step={self.step}, shift={self.shift})"


class QuadExp(PLFunction):
    """``x -> Tr(gamma * e_lam(x - shift))`` for ``lam`` in a quadratic field.

    Uses ``e_lam(y) = lam^[y] (y - [y] + 1/(lam - 1))``; the trace (sum with the
    Galois conjugate) is rational, and the result solves the real recurrence
    whose characteristic polynomial is the minimal polynomial of ``lam``.
    """

    def __init__(self, lam: QuadSurd, gamma: QuadSurd | None = None, shift=0):
        self.lam = lam
        self.gamma = gamma if gamma is not None else QuadSurd(1, 0, lam.D)
        if self.gamma.D != lam.D:
            raise ValueError("gamma must lie in the same quadratic field")
        self.shift = as_rational(shift)
        self._inv = (lam - 1).inverse()

    def _eval(self, x):
        y = x - self.shift
        k = floor(y)
        val = self.gamma * (self.lam ** k) * (self._inv + (y - k))
        return val.trace()

    def breakpoints(self, lo, hi):
        return lattice(self.shift, 1, as_rational(lo), as_rational(hi))

    def to_doc(self):
        return {
            "kind": "quad_exp",
            "lam": self.lam.to_dict(),
            "gamma": self.gamma.to_dict(),
            "shift": str(self.shift),
        }

    def __repr__(self):
        return f"QuadExp({self.lam}, gamma={self.gamma}, shift={self.shift})"


# ---------------------------------------------------------------------------
# the particular-solution ladder


class Psi(PLFunction):
    """``q * Psi(x / q)`` with ``Psi(x) = ([x] + 1) x - [x]([x] + 1)/2``.

    ``Psi(x) - Psi(x - 1) = x``; entire, slope ``[x] + 1``.
    """

    def __init__(self, period=1):
        self.period = as_rational(period)
        if self.period <= 0:
            raise ValueError("period must be positive")

    def _eval(self, x):
        q = self.period
        y = x / q
        k = floor(y)
        return q * ((k + 1) * y - Fraction(k * (k + 1), 2))

    def breakpoints(self, lo, hi):
        return lattice(0, self.period, as_rational(lo), as_rational(hi))

    def to_doc(self):
        doc = {"kind": "psi"}
        if self.period != 1:
            doc["period"] = str(self.period)
        return doc

    def __repr__(self):
        return "Psi()" if self.period == 1 else f"Psi(period={self.period})"


class _LadderFn(PLFunction):
    """``weight([x]) * (Pi(x) - Pi(0))`` for a 1-periodic ``Pi``."""

    kind = ""

    def __init__(self, periodic: PeriodicFn):
        if not isinstance(periodic, PeriodicFn) or periodic.profile.period != 1:
            raise ValueError(f"{type(self).__name__} needs a 1-periodic profile function")
        self.periodic = periodic
        self._d = periodic.profile.d

    @staticmethod
    def weight(k: int) -> Fraction:
        raise NotImplementedError

    def _eval(self, x):
        return self.weight(floor(x)) * (self.periodic._eval(x) - self._d)

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        return sorted(set(self.periodic.breakpoints(lo, hi)) | set(lattice(0, 1, lo, hi)))

    def to_doc(self):
        return {"kind": self.kind, "periodic": self.periodic.to_doc()}

    def __repr__(self):
        return f"{type(self).__name__}({self.periodic!r})"


class PhiFn(_LadderFn):
    """``Phi(x, Pi) = [x](Pi(x) - Pi(0))``; ``Phi(x+1) - Phi(x) = Pi(x) - Pi(0)``."""

    kind = "phi"

    @staticmethod
    def weight(k):
        return Fraction(k)


class ThetaFn(_LadderFn):
    """``Theta(x, Pi) = (1 + [x]([x]-1)/2)(Pi(x) - Pi(0))``; first difference is ``Phi``."""

    kind = "theta"

    @staticmethod
    def weight(k):
        return 1 + Fraction(k * (k - 1), 2)


class OmegaFn(_LadderFn):
    """``Omega(x, Pi) = ([x-1] + [x][x-1][x-2]/6)(Pi(x) - Pi(0))``; first difference is ``Theta``."""

    kind = "omega"

    @staticmethod
    def weight(k):
        return (k - 1) + Fraction(k * (k - 1) * (k - 2), 6)


class Upsilon(PLFunction):
    """``Upsilon(x) = [x]([x]+1)(2(x - [x]) + x - 1)/6``; first difference is ``Psi``."""

    def _eval(self, x):
        k = floor(x)
        return Fraction(k * (k + 1), 6) * (2 * (x - k) + x - 1)

    def breakpoints(self, lo, hi):
        return lattice(0, 1, as_rational(lo), as_rational(hi))

    def to_doc(self):
        return {"kind": "upsilon"}

    def __repr__(self):
        return "Upsilon()"


class Bracket(PLFunction):
    """``x -> C([x - x0], degree) * g(x)`` with ``C(k, 1) = k``, ``C(k, 2) = k(k-1)/2``.

    Continuous because ``g`` vanishes on ``x0 + Z``; this is checked on ``window``.
    """

    def __init__(self, g: PLFunction, x0, window=(-64, 64), degree: int = 1):
        if degree not in (1, 2):
            raise ValueError("bracket degree must be 1 or 2")
        self.g = g
        self.x0 = as_rational(x0)
        self.degree = degree
        lo, hi = map(as_rational, window)
        for p in lattice(self.x0, 1, lo, hi):
            v = g(p)
            if v != 0:
                raise ValueError(
                    f"bracket would be discontinuous: g({p}) = {v} is not 0 on the lattice {self.x0} + Z"
                )

    def _eval(self, x):
        k = floor(x - self.x0)
        w = k if self.degree == 1 else Fraction(k * (k - 1), 2)
        return w * self.g._eval(x)

    def breakpoints(self, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        return sorted(set(self.g.breakpoints(lo, hi)) | set(lattice(self.x0, 1, lo, hi)))

    def to_doc(self):
        doc = {"kind": "bracket", "x0": str(self.x0), "child": self.g.to_doc()}
        if self.degree != 1:
            doc["degree"] = self.degree
        return doc

    def __repr__(self):
        return f"Bracket({self.g!r}, {self.x0}, degree={self.degree})"


# ---------------------------------------------------------------------------
# constructors


def sawtooth(a=1, b=1) -> Sawtooth:
    return Sawtooth(a, b)


def notch(a) -> Notch:
    return Notch(a)


def trop_exp(base, step=1, shift=0) -> TropExp:
    return TropExp(base, step, shift)


def exp_combination(base, terms: Iterable, step=1) -> PLFunction:
    """``sum_j beta_j * e_base(x/step - b_j)`` for ``terms = [(beta_j, b_j)]`` with ``b_j`` in ``[0, 1)``."""
    parts = []
    for coef, b in terms:
        coef, b = as_rational(coef), as_rational(b)
        if not 0 <= b < 1:
            raise ValueError(
                f"shift {b} outside [0, 1); use e(x + 1 - b) = base * e(x - b) to normalize"
            )
        parts.append(Scale(coef, TropExp(base, step, b)))
    if not parts:
        TropExp(base)  # validate the base even for the empty combination
        return Const(0)
    return parts[0] if len(parts) == 1 else Sum(parts)


def psi(period=1) -> Psi:
    return Psi(period)


def _as_periodic(p) -> PeriodicFn:
    if isinstance(p, PeriodicProfile):
        return PeriodicFn(p)
    return p


def phi(periodic) -> PhiFn:
    return PhiFn(_as_periodic(periodic))


def theta(periodic) -> ThetaFn:
    return ThetaFn(_as_periodic(periodic))


def omega_special(periodic) -> OmegaFn:
    return OmegaFn(_as_periodic(periodic))


def upsilon() -> Upsilon:
    return Upsilon()


def bracket(g: PLFunction, x0, window=(-64, 64), degree: int = 1) -> Bracket:
    return Bracket(g, x0, window, degree)


def periodic_from_profile(profile) -> PeriodicFn:
    if not isinstance(profile, PeriodicProfile):
        profile = PeriodicProfile(tuple(profile))
    return PeriodicFn(profile)


def antiperiodic_from_profile(profile, half_period=1) -> AntiPeriodicFn:
    if not isinstance(profile, AntiPeriodicProfile):
        profile = AntiPeriodicProfile(tuple(profile), half_period)
    return AntiPeriodicFn(profile)


def xi_triangle(half_period=1) -> AntiPeriodicFn:
    """Anti-periodic extension of the tent ``min(t, h - t)`` on ``[0, h)``."""
    h = as_rational(half_period)
    return AntiPeriodicFn(AntiPeriodicProfile(((0, 0), (h / 2, h / 2)), h))
