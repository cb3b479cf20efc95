"""Value-distribution functionals: proximity m, counting N, characteristic T.

All three are exact rationals.  Growth order and hyper-order are limsups,
which no finite computation can certify; :func:`order_estimate` reports a
least-squares slope over large radii as an engineering proxy.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import PLFunction, events_in
from .scalar import BOTTOM, DomainError, as_rational

__all__ = [
    "proximity",
    "counting",
    "characteristic",
    "NevanlinnaReport",
    "nevanlinna_report",
    "order_estimate",
    "default_radii",
    "log_rational",
]


def _check_radius(r) -> Fraction:
    r = as_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    return r


def _positive_part(v) -> Fraction:
    if v is BOTTOM:
        return Fraction(0)
    return max(v, Fraction(0))


def proximity(f: PLFunction, r) -> Fraction:
    """``m(r, f) = (f+(r) + f+(-r)) / 2`` with ``f+ = max(f, 0)``."""
    r = _check_radius(r)
    return (_positive_part(f(r)) + _positive_part(f(-r))) / 2


def counting(f: PLFunction, r) -> Fraction:
    """``N(r, f) = 1/2 * sum over poles |b| < r of tau(b) (r - |b|)``."""
    r = _check_radius(r)
    if f.is_bottom:
        raise DomainError("the constant -inf has no counting function")
    total = Fraction(0)
    for ev in events_in(f, -r, r):
        if ev.jump < 0:
            total += ev.multiplicity * (r - abs(ev.location))
    return total / 2


def characteristic(f: PLFunction, r) -> Fraction:
    """``T(r, f) = m(r, f) + N(r, f)``."""
    return proximity(f, r) + counting(f, r)


def log_rational(q: Fraction) -> float:
    """Natural log of a positive rational of any size (no float overflow)."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    return math.log(q.numerator) - math.log(q.denominator)


def default_radii() -> list[Fraction]:
    """``r = 2^k`` for ``k = 3..13``."""
    return [Fraction(2) ** k for k in range(3, 14)]


@dataclass(frozen=True)
class NevanlinnaReport:
    """Exact ``m``, ``N``, ``T`` samples and fitted growth exponents.

    ``order_estimate`` and ``hyper_order_estimate`` are regression slopes over
    ``fit_window``; ``flags`` explains conventions that were applied.
    """

    radii: tuple
    m_values: tuple
    N_values: tuple
    T_values: tuple
    order_estimate: float
    hyper_order_estimate: float | None
    fit_window: tuple
    flags: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "radii": [str(r) for r in self.radii],
            "m": [str(v) for v in self.m_values],
            "N": [str(v) for v in self.N_values],
            "T": [str(v) for v in self.T_values],
            "order_estimate": self.order_estimate,
            "hyper_order_estimate": self.hyper_order_estimate,
            "fit_window": [str(r) for r in self.fit_window],
            "flags": list(self.flags),
            "estimator": "least-squares slope over the upper half of the radius grid",
        }


def nevanlinna_report(f: PLFunction, radii: Sequence | None = None) -> NevanlinnaReport:
    radii = [as_rational(r) for r in (radii if radii is not None else default_radii())]
    if len(radii) < 8:
        raise ValueError("order estimation needs at least 8 radii")
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise ValueError("radii must be positive and increasing")
    ms = [proximity(f, r) for r in radii]
    ns = [counting(f, r) for r in radii]
    ts = [m + n for m, n in zip(ms, ns)]

    top = len(radii) // 2
    fr, ft = radii[top:], ts[top:]
    flags = []
    if all(t == 0 for t in ts):
        order = 0.0
        flags.append("bounded characteristic")
    elif all(t > 0 for t in ft) and len(set(ft)) > 1:
        xs = [log_rational(r) for r in fr]
        order = statistics.linear_regression(xs, [log_rational(t) for t in ft]).slope
    else:
        order = 0.0
        flags.append("bounded characteristic")

    hyper = None
    if all(t > 1 for t in ft) and len(set(ft)) > 1:
        xs = [log_rational(r) for r in fr]
        hyper = statistics.linear_regression(xs, [math.log(log_rational(t)) for t in ft]).slope
    else:
        flags.append("hyper-order not meaningful (T <= 1 on the fit window)")

    return NevanlinnaReport(
        tuple(radii), tuple(ms), tuple(ns), tuple(ts), order, hyper, (fr[0], fr[-1]), tuple(flags)
    )


def order_estimate(f: PLFunction, radii: Sequence | None = None) -> tuple[float, float | None]:
    """``(order, hyper_order)`` fitted on the upper half of ``radii``."""
    rep = nevanlinna_report(f, radii)
    return rep.order_estimate, rep.hyper_order_estimate
