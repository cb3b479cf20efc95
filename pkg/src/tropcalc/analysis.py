"""Checkers for Fermat-, Hayman- and Brueck-type statements about tropical
entire functions.

Everything is exact; "for all x" claims are certified on finite windows by
evaluating at breakpoints and cell midpoints, where a piecewise-linear
identity that holds at those points holds on the whole window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    Const,
    FinitePL,
    Linear,
    PLFunction,
    Scale,
    Shift,
    Sum,
    events_in,
    is_entire_on,
    sample_points,
    tmax,
)
from .scalar import as_rational
from .special import Psi

__all__ = [
    "HoldsOnWindow",
    "Witness",
    "fermat_sum_check",
    "fermat_examples",
    "hayman_product",
    "RootCensus",
    "hayman_census",
    "IsLinear",
    "NotLinear",
    "hayman_linearity_check",
    "BruckReport",
    "bruck_check",
    "looks_transcendental",
    "random_tropical_polynomial",
]


# ---------------------------------------------------------------------------
# Fermat


@dataclass(frozen=True)
class HoldsOnWindow:
    """``max_j alpha_j f_j = 1`` at every checked point of ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction
    points_checked: int
    positive_exponents: bool

    def to_dict(self) -> dict:
        return {
            "verdict": "HoldsOnWindow",
            "window": [str(self.lo), str(self.hi)],
            "points_checked": self.points_checked,
            "positive_exponents": self.positive_exponents,
        }


@dataclass(frozen=True)
class Witness:
    """A point where ``max_j alpha_j f_j`` differs from 1."""

    x: Fraction
    value: Fraction
    positive_exponents: bool

    def to_dict(self) -> dict:
        return {
            "verdict": "Witness",
            "x": str(self.x),
            "value": str(self.value),
            "positive_exponents": self.positive_exponents,
        }


def fermat_sum_check(fs: Sequence[PLFunction], alphas: Sequence, window=(-8, 8), cap=2 ** 10,
                     seed: int = 0, random_points: int = 32):
    """Search for ``x`` with ``max_j alpha_j f_j(x) != 1``.

    The window is doubled until its half-width reaches ``cap``.  Nonzero
    exponents of either sign are accepted; ``positive_exponents`` records
    whether the no-solution statement for entire functions applies.
    """
    if not fs:
        raise ValueError("need at least one function")
    if len(fs) != len(alphas):
        raise ValueError("one exponent per function")
    alphas = [as_rational(a) for a in alphas]
    if any(a == 0 for a in alphas):
        raise ValueError("exponents must be nonzero")
    positive = all(a > 0 for a in alphas)
    g = tmax(*(Scale(a, f) for a, f in zip(alphas, fs)))
    rng = random.Random(seed)
    lo, hi = map(as_rational, window)
    if lo >= hi:
        raise ValueError("empty window")
    checked = 0
    while True:
        pts = set(sample_points(g, lo, hi))
        for _ in range(random_points):
            den = rng.randint(1, 64)
            pts.add(Fraction(rng.randint(int(lo * den), int(hi * den)), den))
        for x in sorted(pts):
            v = g(x)
            if v != 1:
                return Witness(x, v, positive)
        checked += len(pts)
        if max(-lo, hi) >= cap:
            return HoldsOnWindow(lo, hi, checked, positive)
        lo, hi = 2 * lo if lo < 0 else lo - (hi - lo), 2 * hi if hi > 0 else hi + (hi - lo)


def fermat_examples() -> dict:
    """Packaged inputs: two meromorphic solutions, and a mixed-sign pair that solves the equation."""
    alpha, beta = Fraction(1), Fraction(-1)
    return {
        "meromorphic-pair": (
            [FinitePL([(1, 1)], left_slope=0, right_slope=-1), FinitePL([(1, 1)], left_slope=1, right_slope=0)],
            [Fraction(1), Fraction(1)],
        ),
        "mixed-signs": (
            [Const(1 / alpha), tmax(Const(1 / beta), Linear(1, 1 / beta))],
            [alpha, beta],
        ),
    }


# ---------------------------------------------------------------------------
# Hayman


def hayman_product(f: PLFunction, alpha, c) -> PLFunction:
    """``alpha f(x) + f(x + c)``, the tropical ``f^alpha (x) * f(x + c)``."""
    return Sum([Scale(as_rational(alpha), f), Shift(as_rational(c), f)])


@dataclass(frozen=True)
class RootCensus:
    lo: Fraction
    hi: Fraction
    roots: tuple
    count: int
    total_multiplicity: Fraction
    flags: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "window": [str(self.lo), str(self.hi)],
            "roots": [e.to_dict() for e in self.roots],
            "count": self.count,
            "total_multiplicity": str(self.total_multiplicity),
            "flags": list(self.flags),
        }


def root_census(g: PLFunction, lo, hi, flags=()) -> RootCensus:
    """Roots of ``g`` in the closed window ``[lo, hi]``."""
    lo, hi = as_rational(lo), as_rational(hi)
    evs = events_in(g, lo, hi, closed=True)
    roots = tuple(e for e in evs if e.kind == "root")
    flags = list(flags)
    if any(e.kind == "pole" for e in evs):
        flags.append("function has poles in the window")
    return RootCensus(lo, hi, roots, len(roots), sum((e.multiplicity for e in roots), Fraction(0)), tuple(flags))


def hayman_census(f: PLFunction, alpha, c, window=(-20, 20)) -> RootCensus:
    """Root census of ``alpha f(x) + f(x + c)`` on the closed window."""
    lo, hi = map(as_rational, window)
    alpha = as_rational(alpha)
    flags = []
    if not events_in(f, lo - abs(as_rational(c)) - 1, hi + abs(as_rational(c)) + 1):
        flags.append("hypothesis violated (linear f)")
    if not is_entire_on(f, lo - 1, hi + 1):
        flags.append("hypothesis violated (f has poles)")
    if alpha <= 0:
        flags.append("hypothesis violated (alpha <= 0)")
    return root_census(hayman_product(f, alpha, c), lo, hi, flags)


@dataclass(frozen=True)
class IsLinear:
    a: Fraction
    b: Fraction

    def to_dict(self) -> dict:
        return {"verdict": "IsLinear", "a": str(self.a), "b": str(self.b)}


@dataclass(frozen=True)
class NotLinear:
    x: Fraction
    value: Fraction
    expected: Fraction

    def to_dict(self) -> dict:
        return {"verdict": "NotLinear", "x": str(self.x), "value": str(self.value), "expected": str(self.expected)}


def linearity_check(g: PLFunction, lo, hi):
    """``IsLinear(a, b)`` if ``g = a x + b`` on ``[lo, hi]``, else a witness."""
    lo, hi = as_rational(lo), as_rational(hi)
    a = (g(hi) - g(lo)) / (hi - lo)
    b = g(lo) - a * lo
    for x in sample_points(g, lo, hi):
        v = g(x)
        if v != a * x + b:
            return NotLinear(x, v, a * x + b)
    return IsLinear(a, b)


def hayman_linearity_check(f: PLFunction, alpha, c, window=(-20, 20)):
    """Is ``alpha f(x) + f(x + c)`` affine on the window?"""
    return linearity_check(hayman_product(f, alpha, c), *window)


# ---------------------------------------------------------------------------
# Brueck


@dataclass(frozen=True)
class BruckReport:
    """Outcome of the Brueck-type analysis.

    ``alternative`` is ``NegTail`` (``f = Pi + Bx`` near minus infinity),
    ``PosTail`` (near plus infinity), ``BothTails`` (``f = A Psi + Pi + (B-A)x``
    on both tails) or ``Inconclusive``.
    """

    alternative: str
    A: Fraction | None
    B: Fraction | None
    periodic_residue_verified: bool
    shared_root_check: bool
    linear_verified: bool
    tails: tuple
    mismatch: dict | None = None
    notes: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "alternative": self.alternative,
            "A": None if self.A is None else str(self.A),
            "B": None if self.B is None else str(self.B),
            "periodic_residue_verified": self.periodic_residue_verified,
            "shared_root_check": self.shared_root_check,
            "linear_verified": self.linear_verified,
            "tails": [[str(a), str(b)] for a, b in self.tails],
            "mismatch": self.mismatch,
            "notes": list(self.notes),
        }


def _periodic_on(h: PLFunction, lo: Fraction, hi: Fraction) -> bool:
    """``h(x + 1) = h(x)`` for all ``x`` in ``[lo, hi - 1]`` (checked at breakpoints and midpoints)."""
    diff = Sum([Shift(1, h), Scale(-1, h)])
    return all(diff(x) == 0 for x in sample_points(diff, lo, hi - 1))


def bruck_check(f: PLFunction, a, tail_window=(20, 40)) -> BruckReport:
    """Shared-root test, ``A, B`` recovery and tail classification for entire ``f``.

    Tails are ``[-t1, -t0]`` and ``[t0, t1]`` for ``tail_window = (t0, t1)``.
    """
    a = as_rational(a)
    t0, t1 = map(as_rational, tail_window)
    if not 0 < t0 < t1 - 1:
        raise ValueError("tail window must satisfy 0 < t0 < t1 - 1")
    if not is_entire_on(f, -t1 - 1, t1 + 1):
        raise ValueError("f must be tropical entire on the window")
    tails = ((-t1, -t0), (t0, t1))
    u = tmax(Shift(1, f), Const(a))
    v = tmax(f, Const(a))

    eu = {e.location: e.jump for e in events_in(u, -t1, t1)}
    ev = {e.location: e.jump for e in events_in(v, -t1, t1)}
    mismatch = None
    for x in sorted(set(eu) | set(ev)):
        if eu.get(x, 0) != ev.get(x, 0):
            mismatch = {"x": str(x), "jump_shifted": str(eu.get(x, 0)), "jump_unshifted": str(ev.get(x, 0))}
            break
    shared = mismatch is None

    g = Sum([u, Scale(-1, v)])
    A = (g(t1) - g(t0)) / (t1 - t0)
    B = g(t0) - A * t0
    lin = linearity_check(g, -t1, t1)
    linear = isinstance(lin, IsLinear)
    notes = []
    if not linear:
        notes.append(f"g is not affine on [-{t1}, {t1}]: {lin.to_dict()}")

    def active(lo, hi):
        return all(f(x) > a for x in sample_points(f, lo, hi))

    neg, pos = active(*tails[0]), active(*tails[1])
    if neg and pos:
        alternative = "BothTails"
        residue = Sum([f, Scale(-A, Psi()), Linear(-(B - A), 0)])
        verified = all(_periodic_on(residue, lo, hi) for lo, hi in tails)
    elif neg or pos:
        alternative = "NegTail" if neg else "PosTail"
        lo, hi = tails[0] if neg else tails[1]
        residue = Sum([f, Linear(-B, 0)])
        verified = A == 0 and _periodic_on(residue, lo, hi)
    else:
        alternative = "Inconclusive"
        verified = False
        notes.append("a lies above f on both tails")
    return BruckReport(alternative, A, B, verified, shared, linear, tails, mismatch, tuple(notes))


# ---------------------------------------------------------------------------
# helpers


def looks_transcendental(f: PLFunction, start=8, cap=2 ** 10) -> bool:
    """Proxy for "not a tropical polynomial": the breakpoint count keeps growing as the window doubles."""
    counts = []
    L = as_rational(start)
    while L <= cap:
        counts.append(len(events_in(f, -L, L)))
        L *= 2
    return all(b > a for a, b in zip(counts, counts[1:]))


def random_tropical_polynomial(rng: random.Random, terms: int | None = None) -> PLFunction:
    """``max_i (a_i + b_i x)`` with at least two distinct slopes (so non-linear and entire)."""
    k = terms or rng.randint(2, 5)
    slopes = set()
    while len(slopes) < k:
        slopes.add(Fraction(rng.randint(-12, 12), rng.randint(1, 4)))
    pieces = [Linear(s, Fraction(rng.randint(-20, 20), rng.randint(1, 4))) for s in sorted(slopes)]
    return tmax(*pieces)
