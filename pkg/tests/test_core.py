from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_x, random_tree, rationals, trees
from tropcalc.core import (
    Const,
    FinitePL,
    Linear,
    Max,
    Scale,
    Shift,
    Sum,
    eval_at,
    events_in,
    is_entire_on,
    omega_jump,
    one_sided_slopes,
    oplus,
    oslash,
    otimes,
    power,
    shift,
    tmin,
)
from tropcalc.scalar import BOTTOM, DomainError, as_rational, as_scalar, fmt
from tropcalc import scalar
from tropcalc.special import psi, sawtooth, trop_exp

scalars = st.one_of(st.just(BOTTOM), rationals())


# --- semiring laws ----------------------------------------------------------


@given(scalars, scalars, scalars)
def test_semiring_laws(a, b, c):
    add, mul = scalar.oplus, scalar.otimes
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, a) == a
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, BOTTOM) == a
    assert mul(a, Fraction(0)) == a
    assert mul(a, BOTTOM) is BOTTOM


def test_scalar_coercion():
    assert as_rational("-7/2") == Fraction(-7, 2)
    assert as_scalar("-inf") is BOTTOM
    assert fmt(BOTTOM) == "-inf"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational("pi")
    with pytest.raises(DomainError):
        scalar.oslash(Fraction(1), BOTTOM)
    with pytest.raises(DomainError):
        scalar.tpower(BOTTOM, -1)


# --- worked examples --------------------------------------------------------


def test_eval_examples():
    assert eval_at(Linear(1, 0), 5) == 5
    assert eval_at(psi(), 3) == 6
    assert eval_at(trop_exp(2), 0) == 1
    assert eval_at(sawtooth(1, 1), Fraction(1, 2)) == Fraction(1, 4)
    assert eval_at(oplus(Linear(1, 0), Const(0)), -3) == 0
    assert eval_at(otimes(Linear(1, 0), Const(3)), 2) == 5
    q = oslash(shift(psi(), 1), psi())
    for x in (Fraction(-2), Fraction(0), Fraction(7, 3)):
        assert q(x) == x + 1


def test_bottom_handling():
    bot = Const(BOTTOM)
    assert oplus(bot, Linear(1, 0))(4) == 4
    assert otimes(bot, Linear(1, 0))(4) is BOTTOM
    with pytest.raises(DomainError):
        oslash(Linear(1, 0), bot)(0)
    with pytest.raises(DomainError):
        events_in(bot, 0, 1)


def test_omega_examples():
    absx = Max([Linear(1, 0), Linear(-1, 0)])
    assert omega_jump(absx, 0) == 2
    for k in range(-5, 6):
        assert omega_jump(psi(), k) == 1
    pole = tmin(Const(1), Linear(-1, 2))
    assert omega_jump(pole, 1) == -1
    assert one_sided_slopes(pole, 1) == (0, -1)


def test_events_examples():
    ev = events_in(sawtooth(1, 1), 0, 2)
    assert [(e.location, e.jump, e.kind) for e in ev] == [
        (Fraction(1, 2), -1, "pole"),
        (Fraction(1), 1, "root"),
        (Fraction(3, 2), -1, "pole"),
    ]
    assert events_in(Linear(2, 1), -10, 10) == []
    ev = events_in(trop_exp(2), -2, 2)
    assert [(e.location, e.jump) for e in ev] == [(-1, Fraction(1, 4)), (0, Fraction(1, 2)), (1, 1)]
    assert all(e.kind == "root" for e in ev)


def test_is_entire_examples():
    assert is_entire_on(psi(), -50, 50)
    assert not is_entire_on(sawtooth(1, 1), 0, 2)
    assert is_entire_on(Const(5), -1, 1)
    assert not is_entire_on(trop_exp(-2), -3, 3)


def test_finite_pl_rejects_unsorted():
    with pytest.raises(ValueError):
        FinitePL([(1, 0), (1, 1)])


# --- properties -------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(trees(), trees(), st.integers(0, 2 ** 32))
def test_pointwise_soundness(f, g, seed):
    rng = random.Random(seed)
    c, a = rand_x(rng, -3, 3), rand_x(rng, -3, 3)
    for _ in range(40):
        x = rand_x(rng, -10, 10)
        assert Max([f, g])(x) == max(f(x), g(x))
        assert Sum([f, g])(x) == f(x) + g(x)
        assert Scale(a, f)(x) == a * f(x)
        assert Shift(c, f)(x) == f(x + c)


def test_pointwise_soundness_thousand_points():
    rng = random.Random(7)
    f, g = random_tree(rng), random_tree(rng)
    for _ in range(1000):
        x = rand_x(rng, -10, 10)
        assert Max([f, g])(x) == max(f(x), g(x))
        assert Sum([f, g])(x) == f(x) + g(x)
        assert Shift(Fraction(1, 3), f)(x) == f(x + Fraction(1, 3))


@settings(max_examples=40, deadline=None)
@given(trees())
def test_continuity_at_breakpoints(f):
    for b in f.breakpoints(Fraction(-4), Fraction(4)):
        left, right = one_sided_slopes(f, b)
        h = Fraction(1, 10 ** 9)
        # the segments on either side, extended to b, meet at f(b)
        assert f(b - h) + left * h == f(b)
        assert f(b + h) == f(b) + right * h


@settings(max_examples=40, deadline=None)
@given(trees(), trees(), rationals(-5, 5))
def test_jump_additivity(f, g, x):
    assert omega_jump(Sum([f, g]), x) == omega_jump(f, x) + omega_jump(g, x)


@settings(max_examples=40, deadline=None)
@given(trees(), st.integers(0, 2 ** 32))
def test_omega_zero_off_breakpoints(f, seed):
    rng = random.Random(seed)
    bps = set(f.breakpoints(Fraction(-6), Fraction(6)))
    for _ in range(10):
        x = rand_x(rng, -5, 5)
        if x not in bps:
            assert omega_jump(f, x) == 0


@settings(max_examples=30, deadline=None)
@given(trees())
def test_events_match_omega(f):
    for e in events_in(f, -3, 3):
        assert omega_jump(f, e.location) == e.jump != 0


def test_power_is_scaling():
    f = power(psi(), Fraction(3, 2))
    assert f(3) == 9
