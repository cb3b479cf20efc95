"""Closed-form solution families for ``sum_j n_j y(x + j) = c`` (``s <= 3``).

The shift operator ``E`` acts on tropical meromorphic functions, and the
equation reads ``P(E) y = rhs`` with ``P(lam) = sum_j n_j lam^j``.  The solver

* factors ``P`` over the rationals,
* gives every root block ``(E - r)^k`` its own homogeneous family (periodic
  and anti-periodic slots, exponential combinations, brackets, the
  ``Phi``/``Theta``/``Psi`` ladder for the unit root),
* adds a particular solution drawn from ``span(1, x, Psi, Upsilon)``, on which
  ``E - 1`` acts nilpotently,
* labels the coefficient tuple with a case of the classical case tree and
  attaches the completeness status known for that case.

Coprime factors give a direct sum of kernels, so a family is complete as soon
as each block is.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .core import Const, Linear, PLFunction, Scale, Shift, Sum
from .quadratic import QuadSurd, quadratic_roots
from .scalar import as_rational
from .special import (
    AntiPeriodicFn,
    AntiPeriodicProfile,
    Bracket,
    PeriodicFn,
    PeriodicProfile,
    PhiFn,
    Psi,
    QuadExp,
    ThetaFn,
    OmegaFn,
    TropExp,
    Upsilon,
    sawtooth,
    xi_triangle,
)

__all__ = [
    "COMPLETE",
    "PARTIAL",
    "OPEN",
    "OpenCaseError",
    "EquationSpec",
    "SolutionFamily",
    "CubicReduction",
    "classify",
    "normalize",
    "solve",
    "solve_two_term",
    "solve_second_order_homogeneous",
    "solve_three_term",
    "solve_four_term",
    "instantiate",
    "random_parameters",
    "residual",
    "make_grid",
    "LABEL_STATUS",
]

COMPLETE = "Complete"
PARTIAL = "PartialKnown"
OPEN = "Open"


class OpenCaseError(ValueError):
    """Instantiation was requested for a case without a known solution family."""


# ---------------------------------------------------------------------------
# equations


@dataclass(frozen=True)
class EquationSpec:
    """``sum_j coefficients[j] * y(x + j) = rhs_slope * x + rhs``."""

    coefficients: tuple
    rhs: Fraction = Fraction(1)
    rhs_slope: Fraction = Fraction(0)

    def __post_init__(self):
        cs = tuple(as_rational(c) for c in self.coefficients)
        if not 1 <= len(cs) <= 4:
            raise ValueError("between 1 and 4 coefficients (order s <= 3) are supported")
        object.__setattr__(self, "coefficients", cs)
        object.__setattr__(self, "rhs", as_rational(self.rhs))
        object.__setattr__(self, "rhs_slope", as_rational(self.rhs_slope))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def rhs_at(self, x: Fraction) -> Fraction:
        return self.rhs_slope * x + self.rhs

    def lhs_at(self, f: PLFunction, x: Fraction) -> Fraction:
        return sum((n * f(x + j) for j, n in enumerate(self.coefficients) if n), Fraction(0))

    def to_dict(self) -> dict:
        doc = {"coefficients": [str(c) for c in self.coefficients], "rhs": str(self.rhs)}
        if self.rhs_slope:
            doc["rhs_slope"] = str(self.rhs_slope)
        return doc


def normalize(coefficients: Sequence) -> tuple[tuple[Fraction, ...], int]:
    """Trim trailing zeros and strip ``k`` leading zeros.

    If ``u`` solves the trimmed equation then ``y(x) = u(x - k)`` solves the
    original one.
    """
    cs = [as_rational(c) for c in coefficients]
    if not any(cs):
        raise ValueError("all coefficients are zero")
    while cs[-1] == 0:
        cs.pop()
    k = 0
    while cs[k] == 0:
        k += 1
    return tuple(cs[k:]), k


# ---------------------------------------------------------------------------
# terms


class Term(ABC):
    kind = ""

    @abstractmethod
    def instantiate(self, params: dict) -> PLFunction:
        ...

    def slots(self) -> list[tuple[str, str]]:
        return []

    @abstractmethod
    def to_dict(self) -> dict:
        ...


def _default_periodic():
    return sawtooth(1, 1)


def _periodic_value(params, slot) -> PLFunction:
    v = params.get(slot)
    if v is None:
        return _default_periodic()
    if isinstance(v, PLFunction):
        return v
    return Const(as_rational(v))


@dataclass(frozen=True)
class PeriodicSlot(Term):
    """A free 1-periodic function."""

    slot: str
    kind = "periodic_slot"

    def instantiate(self, params):
        return _periodic_value(params, self.slot)

    def slots(self):
        return [(self.slot, "periodic")]

    def to_dict(self):
        return {"kind": self.kind, "slot": self.slot}


@dataclass(frozen=True)
class AntiPeriodicSlot(Term):
    """A free function with ``f(x + h) = -f(x)``."""

    slot: str
    half_period: Fraction = Fraction(1)
    kind = "antiperiodic_slot"

    def instantiate(self, params):
        v = params.get(self.slot)
        if v is None:
            return xi_triangle(self.half_period)
        if isinstance(v, PLFunction):
            return v
        if as_rational(v) != 0:
            raise ValueError("an anti-periodic slot takes a function or 0")
        return Const(0)

    def slots(self):
        return [(self.slot, f"antiperiodic:{self.half_period}")]

    def to_dict(self):
        return {"kind": self.kind, "slot": self.slot, "half_period": str(self.half_period)}


@dataclass(frozen=True)
class ConstantTerm(Term):
    value: Fraction
    kind = "constant"

    def instantiate(self, params):
        return Const(self.value)

    def to_dict(self):
        return {"kind": self.kind, "value": str(self.value)}


@dataclass(frozen=True)
class LinearTerm(Term):
    """``slope * x``."""

    slope: Fraction
    kind = "linear"

    def instantiate(self, params):
        return Linear(self.slope, 0)

    def to_dict(self):
        return {"kind": self.kind, "slope": str(self.slope)}


@dataclass(frozen=True)
class PsiTerm(Term):
    coeff: Fraction
    kind = "psi"

    def instantiate(self, params):
        return Scale(self.coeff, Psi())

    def to_dict(self):
        return {"kind": self.kind, "coeff": str(self.coeff)}


@dataclass(frozen=True)
class UpsilonTerm(Term):
    coeff: Fraction
    kind = "upsilon"

    def instantiate(self, params):
        return Scale(self.coeff, Upsilon())

    def to_dict(self):
        return {"kind": self.kind, "coeff": str(self.coeff)}


@dataclass(frozen=True)
class _LadderTerm(Term):
    slot: str

    def _cls(self):
        raise NotImplementedError

    def instantiate(self, params):
        p = _periodic_value(params, self.slot)
        if not isinstance(p, PeriodicFn):
            return Const(0)  # Pi - Pi(0) vanishes for a constant profile
        return self._cls()(p)

    def slots(self):
        return [(self.slot, "periodic")]

    def to_dict(self):
        return {"kind": self.kind, "slot": self.slot}


class PhiTerm(_LadderTerm):
    """``Phi(x, Pi_slot) = [x](Pi(x) - Pi(0))``."""

    kind = "phi"

    def _cls(self):
        return PhiFn


class ThetaTerm(_LadderTerm):
    kind = "theta"

    def _cls(self):
        return ThetaFn


class OmegaTerm(_LadderTerm):
    kind = "omega"

    def _cls(self):
        return OmegaFn


@dataclass(frozen=True)
class FreeMultiple(Term):
    """A free rational multiple ``a_slot * inner``."""

    slot: str
    inner: Term
    kind = "free_multiple"

    def instantiate(self, params):
        a = as_rational(params.get(self.slot, 1))
        return Scale(a, self.inner.instantiate(params))

    def slots(self):
        return [(self.slot, "coefficient")] + self.inner.slots()

    def to_dict(self):
        return {"kind": self.kind, "slot": self.slot, "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class ScaledTerm(Term):
    coeff: Fraction
    inner: Term
    kind = "scaled"

    def instantiate(self, params):
        return Scale(self.coeff, self.inner.instantiate(params))

    def slots(self):
        return self.inner.slots()

    def to_dict(self):
        return {"kind": self.kind, "coeff": str(self.coeff), "inner": self.inner.to_dict()}


def _exp_terms(params, slot):
    raw = params.get(slot)
    if raw is None:
        return [(Fraction(1), Fraction(0))]
    out = []
    for coef, b in raw:
        coef, b = as_rational(coef), as_rational(b)
        if not 0 <= b < 1:
            raise ValueError(f"exponential shift {b} outside [0, 1)")
        out.append((coef, b))
    return out


def _sum(parts: list[PLFunction]) -> PLFunction:
    if not parts:
        return Const(0)
    return parts[0] if len(parts) == 1 else Sum(parts)


@dataclass(frozen=True)
class ExpComb(Term):
    """``L_b``: ``sum_j beta_j * e_base(x/step - b_j)`` with free ``(beta_j, b_j)``."""

    base: Fraction
    slot: str
    step: Fraction = Fraction(1)
    kind = "exp_comb"

    def instantiate(self, params):
        return _sum([Scale(c, TropExp(self.base, self.step, b)) for c, b in _exp_terms(params, self.slot)])

    def slots(self):
        return [(self.slot, "exp")]

    def to_dict(self):
        doc = {"kind": self.kind, "base": str(self.base), "slot": self.slot}
        if self.step != 1:
            doc["step"] = str(self.step)
        return doc


@dataclass(frozen=True)
class QuadExpComb(Term):
    """``sum_j Tr(gamma_j * e_lam(x - b_j))`` for ``lam`` in a quadratic field."""

    lam: QuadSurd
    slot: str
    kind = "quad_exp_comb"

    def instantiate(self, params):
        raw = params.get(self.slot)
        if raw is None:
            raw = [(1, 0, 0)]
        parts = []
        for a, b, shift in raw:
            shift = as_rational(shift)
            if not 0 <= shift < 1:
                raise ValueError(f"exponential shift {shift} outside [0, 1)")
            parts.append(QuadExp(self.lam, QuadSurd(a, b, self.lam.D), shift))
        return _sum(parts)

    def slots(self):
        return [(self.slot, "quad_exp")]

    def to_dict(self):
        return {"kind": self.kind, "lam": self.lam.to_dict(), "slot": self.slot}


@dataclass(frozen=True)
class BracketTerm(Term):
    """``C([x - x0], degree) * inner`` where ``x0`` is a zero lattice of the inner function.

    ``rule`` is ``"exp-zero"`` (``x0 = b + 1/(1 - base)`` per exponential
    term) or ``"antiperiodic-zero"`` (``x0`` = first zero of the instance).
    """

    inner: Term
    rule: str
    degree: int = 1
    kind = "bracket"

    def instantiate(self, params):
        if self.rule == "exp-zero":
            inner = self.inner
            assert isinstance(inner, ExpComb) and inner.step == 1
            parts = []
            for c, b in _exp_terms(params, inner.slot):
                e = TropExp(inner.base, 1, b)
                parts.append(Scale(c, Bracket(e, b + e.zero_offset, degree=self.degree)))
            return _sum(parts)
        if self.rule == "antiperiodic-zero":
            g = self.inner.instantiate(params)
            if not isinstance(g, AntiPeriodicFn):
                return Const(0)
            return Bracket(g, g.x0, degree=self.degree)
        raise ValueError(f"unknown bracket rule {self.rule!r}")

    def slots(self):
        return self.inner.slots()

    def to_dict(self):
        doc = {"kind": self.kind, "rule": self.rule, "inner": self.inner.to_dict()}
        if self.degree != 1:
            doc["degree"] = self.degree
        return doc


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class SolutionFamily:
    """A closed-form solution set; ``index_shift`` k means ``y(x) = u(x - k)``."""

    status: str
    case_label: str
    terms: tuple
    open_note: str | None
    equation: EquationSpec
    index_shift: int = 0
    reduction: "CubicReduction | None" = None

    def slots(self) -> list[tuple[str, str]]:
        seen, out = set(), []
        for t in self.terms:
            for s in t.slots():
                if s[0] not in seen:
                    seen.add(s[0])
                    out.append(s)
        return out

    def to_dict(self) -> dict:
        doc = {
            "status": self.status,
            "case_label": self.case_label,
            "terms": [t.to_dict() for t in self.terms],
            "open_note": self.open_note,
            "equation": self.equation.to_dict(),
        }
        if self.index_shift:
            doc["index_shift"] = self.index_shift
        if self.reduction is not None:
            doc["reduction"] = self.reduction.to_dict()
        return doc


@dataclass(frozen=True)
class CubicReduction:
    """Roots of ``q lam^3 + p lam^2 + m lam + n`` and the first-order cascade they induce.

    ``roots`` lists rational roots with multiplicity; when the cubic does not
    split over Q, ``roots`` is ``None`` and ``factors`` records the factorization.
    """

    coefficients: tuple
    roots: tuple | None
    factors: tuple
    stages: tuple = field(default=())

    @classmethod
    def from_coefficients(cls, n, m, p, q) -> "CubicReduction":
        cs = tuple(map(as_rational, (n, m, p, q)))
        if cs[3] == 0:
            raise ValueError("leading coefficient q must be nonzero")
        facs = _factor(cs)
        roots = []
        for poly, mult in facs:
            if len(poly) != 2:
                roots = None
                break
            roots += [-poly[0] / poly[1]] * mult
        stages = ()
        if roots is not None:
            roots = sorted(roots)
            stages = tuple(
                f"stage {i + 1}: G_{i + 1}(x + 1) - ({r}) G_{i + 1}(x) = G_{i}(x)" for i, r in enumerate(roots)
            )
        return cls(cs, tuple(roots) if roots is not None else None, tuple(facs), stages)

    def vieta_holds(self) -> bool:
        if self.roots is None:
            return False
        n, m, p, q = self.coefficients
        a, b, c = self.roots
        return a * b * c == -n / q and a + b + c == -p / q and a * b + b * c + c * a == m / q

    def to_dict(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "roots": None if self.roots is None else [str(r) for r in self.roots],
            "factors": [[[str(c) for c in poly], mult] for poly, mult in self.factors],
            "stages": list(self.stages),
            "vieta_holds": self.vieta_holds(),
        }


# ---------------------------------------------------------------------------
# factoring and root blocks

_LAM = sympy.Symbol("lam")


def _factor(cs: Sequence[Fraction]) -> list[tuple[tuple[Fraction, ...], int]]:
    """Irreducible factors over Q of ``sum cs[j] lam^j`` (ascending coefficient tuples)."""
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(cs)], _LAM, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        coeffs = tuple(Fraction(str(c)) for c in reversed(fac.all_coeffs()))
        out.append((coeffs, int(mult)))

    def key(item):
        poly, _ = item
        return (len(poly), -poly[0] / poly[-1] if len(poly) == 2 else 0)

    return sorted(out, key=key)


class _Slots:
    def __init__(self):
        self.counts = {}

    def __call__(self, prefix: str) -> str:
        self.counts[prefix] = self.counts.get(prefix, 0) + 1
        return f"{prefix}{self.counts[prefix]}"


def _rational_block(r: Fraction, k: int, new) -> tuple[list[Term], str]:
    if r == 1:
        terms = [PeriodicSlot(new("P"))]
        if k >= 2:
            terms += [FreeMultiple(new("a"), LinearTerm(Fraction(1))), PhiTerm(new("P"))]
        if k >= 3:
            terms += [ThetaTerm(new("P")), FreeMultiple(new("a"), PsiTerm(Fraction(1)))]
        return terms, COMPLETE
    if r == -1:
        terms = [AntiPeriodicSlot(new("X"))]
        if k >= 2:
            terms.append(BracketTerm(AntiPeriodicSlot(new("X")), "antiperiodic-zero"))
        if k >= 3:
            terms.append(BracketTerm(AntiPeriodicSlot(new("X")), "antiperiodic-zero", degree=2))
        return terms, COMPLETE if k <= 2 else PARTIAL
    terms = [ExpComb(r, new("E"))]
    if r < 0:
        if k >= 2:
            terms.append(BracketTerm(ExpComb(r, new("E")), "exp-zero"))
        if k >= 3:
            terms.append(BracketTerm(ExpComb(r, new("E")), "exp-zero", degree=2))
        return terms, COMPLETE if k <= 2 else PARTIAL
    return terms, COMPLETE if k == 1 else PARTIAL


def _quadratic_block(poly: tuple[Fraction, ...], new) -> tuple[list[Term], str]:
    c, b, a = poly
    if b == 0:
        mu = -c / a
        if mu == -1:
            return [AntiPeriodicSlot(new("X"), Fraction(2))], COMPLETE
        return [ExpComb(mu, new("E"), Fraction(2))], COMPLETE
    lam, _ = quadratic_roots(a, b, c)
    if lam.D > 0:
        return [QuadExpComb(lam, new("Q"))], COMPLETE
    if c / a == 1:
        return [QuadExpComb(lam, new("Q"))], PARTIAL
    return [], OPEN


def _homogeneous(cs: Sequence[Fraction]) -> tuple[list[Term], str]:
    new = _Slots()
    terms, statuses = [], []
    for poly, mult in _factor(cs):
        if len(poly) == 2:
            t, st = _rational_block(-poly[0] / poly[1], mult, new)
        elif len(poly) == 3 and mult == 1:
            t, st = _quadratic_block(poly, new)
        else:
            t, st = [], OPEN
        terms += t
        statuses.append(st)
    if OPEN in statuses:
        return [], OPEN
    return terms, PARTIAL if PARTIAL in statuses else COMPLETE


# ---------------------------------------------------------------------------
# particular solutions in span(1, x, Psi, Upsilon)

# (E - 1) on the basis (1, x, Psi, Upsilon): columns are images in that basis.
_N = [
    [0, 1, 1, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [0, 0, 0, 0],
]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)] for i in range(4)]


def _shift_matrix(cs: Sequence[Fraction]):
    ident = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    e = [[ident[i][j] + _N[i][j] for j in range(4)] for i in range(4)]
    total = [[Fraction(0)] * 4 for _ in range(4)]
    power = ident
    for c in cs:
        total = [[total[i][j] + c * power[i][j] for j in range(4)] for i in range(4)]
        power = _matmul(power, e)
    return total


def _solve_linear(mat, rhs) -> list[Fraction] | None:
    """Exact Gaussian elimination; free variables are set to 0."""
    rows = [list(r) + [v] for r, v in zip(mat, rhs)]
    n = len(rows[0]) - 1
    pivots, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def _particular(cs: Sequence[Fraction], rhs: Fraction, slope: Fraction) -> list[Term]:
    w = _solve_linear(_shift_matrix(cs), [rhs, slope, Fraction(0), Fraction(0)])
    if w is None:
        raise ValueError("the affine right-hand side resonates beyond the supported ladder")
    out: list[Term] = []
    c1, cx, cpsi, cups = w
    if c1:
        out.append(ConstantTerm(c1))
    if cx:
        out.append(LinearTerm(cx))
    if cpsi:
        out.append(PsiTerm(cpsi))
    if cups:
        out.append(UpsilonTerm(cups))
    return out


# ---------------------------------------------------------------------------
# the case tree

_NOTES = {
    "complex": "complex characteristic roots of modulus other than 1: no tropical meromorphic "
    "solution family is known for this case",
    "unimodular": "traces of conjugate complex exponentials solve this case, but it is not known "
    "whether they exhaust all solutions",
    "double-positive": "exponential combinations with the repeated positive base solve this case; "
    "whether other solutions exist is unknown",
    "resonance": "a repeated positive root (or a triple negative one) leaves a first-order stage whose "
    "right-hand side resonates with its own homogeneous solutions; only the listed families are known",
    "cascade-complex": "the reduction through first-order stages needs real characteristic roots",
    "cascade-irrational": "the characteristic cubic has no rational root, so its roots cannot be "
    "represented exactly",
}

LABEL_STATUS = {
    "zeroth-order": COMPLETE,
    "first-order:antiperiodic": COMPLETE,
    "first-order:periodic": COMPLETE,
    "first-order:exponential": COMPLETE,
    "second-order:c=2,d=1": COMPLETE,
    "second-order:unit-and-minus-one": COMPLETE,
    "second-order:unit-and-exponential": COMPLETE,
    "second-order:c=-2,d=1": COMPLETE,
    "second-order:double-negative-root": COMPLETE,
    "second-order:double-positive-root": PARTIAL,
    "second-order:distinct-real-roots": COMPLETE,
    "second-order:even-step": COMPLETE,
    "second-order:unimodular-complex-roots": PARTIAL,
    "second-order:complex-roots": OPEN,
    "third-order:triple-condition:double-unit-and-minus-one": COMPLETE,
    "third-order:triple-condition:triple-unit-root": COMPLETE,
    "third-order:triple-condition:double-unit-and-exponential": COMPLETE,
    "third-order:sum-zero:alternating": COMPLETE,
    "third-order:sum-zero:half-step-exponential": COMPLETE,
    "third-order:sum-zero:double-minus-one": COMPLETE,
    "third-order:sum-zero:double-negative-root": COMPLETE,
    "third-order:sum-zero:double-positive-root": PARTIAL,
    "third-order:sum-zero:distinct-real-roots": COMPLETE,
    "third-order:sum-zero:unimodular-complex-roots": PARTIAL,
    "third-order:sum-zero:complex-roots": OPEN,
    "third-order:cascade": COMPLETE,
    "third-order:cascade:unresolved-resonance": PARTIAL,
    "third-order:cascade:quadratic-surd-roots": COMPLETE,
    "third-order:cascade:complex-roots": OPEN,
    "third-order:cascade:irrational-roots": OPEN,
}

_LABEL_NOTE = {
    "second-order:double-positive-root": "double-positive",
    "second-order:unimodular-complex-roots": "unimodular",
    "second-order:complex-roots": "complex",
    "third-order:sum-zero:double-positive-root": "double-positive",
    "third-order:sum-zero:unimodular-complex-roots": "unimodular",
    "third-order:sum-zero:complex-roots": "complex",
    "third-order:cascade:unresolved-resonance": "resonance",
    "third-order:cascade:complex-roots": "cascade-complex",
    "third-order:cascade:irrational-roots": "cascade-irrational",
}


def _quadratic_case(c: Fraction, d: Fraction, prefix: str) -> str:
    """Label of ``lam^2 - c lam + d`` (``d != 0``, ``lam = 1`` not a root)."""
    disc = c * c - 4 * d
    if c == -2 and d == 1:
        return f"{prefix}:c=-2,d=1" if prefix == "second-order" else f"{prefix}:double-minus-one"
    if disc == 0:
        return f"{prefix}:double-negative-root" if c < 0 else f"{prefix}:double-positive-root"
    if disc > 0:
        return f"{prefix}:distinct-real-roots"
    if c == 0:
        return f"{prefix}:even-step"
    if d == 1:
        return f"{prefix}:unimodular-complex-roots"
    return f"{prefix}:complex-roots"


def classify(coefficients: Sequence) -> str:
    """Case label of ``sum_j n_j y(x + j) = c``; total on nonzero rational tuples."""
    cs, _ = normalize(coefficients)
    s = len(cs) - 1
    if s == 0:
        return "zeroth-order"
    if s == 1:
        a, b = cs
        if a == b:
            return "first-order:antiperiodic"
        if a == -b:
            return "first-order:periodic"
        return "first-order:exponential"
    if s == 2:
        n, m, p = cs
        if n + m + p == 0:
            if n == p:
                return "second-order:c=2,d=1"
            if n == -p:
                return "second-order:unit-and-minus-one"
            return "second-order:unit-and-exponential"
        return _quadratic_case(-m / p, n / p, "second-order")
    n, m, p, q = cs
    if n + m + p + q == 0:
        if 3 * n + 2 * m + p == 0:
            if m == -n:
                return "third-order:triple-condition:double-unit-and-minus-one"
            if m == -3 * n:
                return "third-order:triple-condition:triple-unit-root"
            return "third-order:triple-condition:double-unit-and-exponential"
        if n + m == 0:
            # n = -p would force 3n + 2m + p = 0
            return "third-order:sum-zero:alternating" if n == p else "third-order:sum-zero:half-step-exponential"
        s3 = n + m + p
        return _quadratic_case(-(n + m) / s3, n / s3, "third-order:sum-zero")
    facs = _factor(cs)
    degrees = sorted(len(poly) - 1 for poly, _ in facs)
    if degrees == [3]:
        return "third-order:cascade:irrational-roots"
    if 2 in degrees:
        quad = next(poly for poly, _ in facs if len(poly) == 3)
        c0, b, a = quad
        return "third-order:cascade:quadratic-surd-roots" if b * b - 4 * a * c0 > 0 else "third-order:cascade:complex-roots"
    _, status = _homogeneous(cs)
    return "third-order:cascade" if status == COMPLETE else "third-order:cascade:unresolved-resonance"


# ---------------------------------------------------------------------------
# solving


def solve(spec: EquationSpec) -> SolutionFamily:
    """Solution family of ``spec`` with its case label and completeness status."""
    cs, shift = normalize(spec.coefficients)
    label = classify(spec.coefficients)
    status = LABEL_STATUS[label]
    note = _NOTES[_LABEL_NOTE[label]] if label in _LABEL_NOTE else None
    reduction = CubicReduction.from_coefficients(*cs) if len(cs) == 4 else None
    if status == OPEN:
        return SolutionFamily(OPEN, label, (), note, spec, shift, reduction)
    homo, block_status = _homogeneous(cs)
    if block_status != status:
        raise AssertionError(f"case {label}: block status {block_status} disagrees with {status}")
    terms = homo + _particular(cs, spec.rhs, spec.rhs_slope)
    return SolutionFamily(status, label, tuple(terms), note, spec, shift, reduction)


def _coerce_spec(spec_or_coeffs, rhs=1) -> EquationSpec:
    if isinstance(spec_or_coeffs, EquationSpec):
        return spec_or_coeffs
    return EquationSpec(tuple(spec_or_coeffs), rhs)


def _require_order(spec: EquationSpec, s: int):
    if spec.order != s:
        raise ValueError(f"expected {s + 1} coefficients, got {spec.order + 1}")


def solve_two_term(spec, rhs=1) -> SolutionFamily:
    """``alpha y(x) + beta y(x + 1) = c``."""
    spec = _coerce_spec(spec, rhs)
    _require_order(spec, 1)
    if not any(spec.coefficients) and (spec.rhs or spec.rhs_slope):
        raise ValueError("0 = c with c != 0 has no solution")
    return solve(spec)


def solve_three_term(spec, rhs=1) -> SolutionFamily:
    """``n y(x) + m y(x + 1) + p y(x + 2) = c``."""
    spec = _coerce_spec(spec, rhs)
    _require_order(spec, 2)
    return solve(spec)


def solve_four_term(spec, rhs=1) -> SolutionFamily:
    """``n y(x) + m y(x + 1) + p y(x + 2) + q y(x + 3) = c``."""
    spec = _coerce_spec(spec, rhs)
    _require_order(spec, 3)
    return solve(spec)


def solve_second_order_homogeneous(c, d) -> SolutionFamily:
    """``F(x + 1) - c F(x) + d F(x - 1) = 0``, solved as ``G(x + 2) - c G(x + 1) + d G(x) = 0``."""
    c, d = as_rational(c), as_rational(d)
    return solve(EquationSpec((d, -c, Fraction(1)), 0))


# ---------------------------------------------------------------------------
# instantiation and verification


def instantiate(family: SolutionFamily, params: dict | None = None) -> PLFunction:
    """A concrete member of ``family``; missing slots take documented defaults."""
    if family.status == OPEN:
        raise OpenCaseError(f"no solution family is known ({family.case_label}): {family.open_note}")
    params = params or {}
    f = _sum([t.instantiate(params) for t in family.terms])
    if family.index_shift:
        f = Shift(-family.index_shift, f)
    return f


def _rand_q(rng: random.Random, lo=-3, hi=3, den=6) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _rand_unit(rng: random.Random) -> Fraction:
    """A rational in ``[0, 1)``."""
    d = rng.randint(1, 12)
    return Fraction(rng.randrange(d), d)


def _rand_positions(rng, length: Fraction, k: int) -> list[Fraction]:
    pos = {Fraction(0)}
    while len(pos) < k:
        pos.add(_rand_unit(rng) * length)
    return sorted(pos)


def random_periodic(rng: random.Random) -> PeriodicFn:
    k = rng.randint(1, 4)
    return PeriodicFn(PeriodicProfile(tuple((t, _rand_q(rng)) for t in _rand_positions(rng, Fraction(1), k))))


def random_antiperiodic(rng: random.Random, half_period=1) -> AntiPeriodicFn:
    h = as_rational(half_period)
    k = rng.randint(1, 4)
    pts = tuple((t, _rand_q(rng)) for t in _rand_positions(rng, h, k))
    return AntiPeriodicFn(AntiPeriodicProfile(pts, h))


def random_parameters(family: SolutionFamily, rng: random.Random) -> dict:
    """Random values for every slot of ``family`` (profiles, coefficients, shift lists)."""
    params = {}
    for slot, kind in family.slots():
        if kind == "periodic":
            params[slot] = random_periodic(rng) if rng.random() < 0.85 else _rand_q(rng)
        elif kind.startswith("antiperiodic"):
            params[slot] = random_antiperiodic(rng, Fraction(kind.split(":")[1]))
        elif kind == "coefficient":
            params[slot] = _rand_q(rng)
        elif kind == "exp":
            params[slot] = [(_rand_q(rng), _rand_unit(rng)) for _ in range(rng.randint(1, 3))]
        elif kind == "quad_exp":
            params[slot] = [(_rand_q(rng), _rand_q(rng), _rand_unit(rng)) for _ in range(rng.randint(1, 2))]
        else:  # pragma: no cover - all slot kinds are enumerated above
            raise AssertionError(kind)
    return params


def make_grid(n: int = 64, lo=-8, hi=8, seed: int = 0) -> list[Fraction]:
    """All integers in ``[lo, hi]`` plus seeded random non-integer rationals, ``n`` points in total."""
    lo, hi = as_rational(lo), as_rational(hi)
    rng = random.Random(seed)
    pts = set(Fraction(k) for k in range(int(-(-lo // 1)), int(hi // 1) + 1))
    while len(pts) < n:
        den = rng.randint(2, 97)
        x = Fraction(rng.randint(int(lo * den), int(hi * den)), den)
        if x.denominator > 1:
            pts.add(x)
    return sorted(pts)


def residual(f: PLFunction, spec: EquationSpec, grid: Iterable | None = None) -> Fraction:
    """``max |sum_j n_j f(x + j) - rhs(x)|`` over ``grid`` (exact)."""
    grid = list(grid) if grid is not None else make_grid()
    if not grid:
        raise ValueError("empty grid")
    return max(abs(spec.lhs_at(f, as_rational(x)) - spec.rhs_at(as_rational(x))) for x in grid)
