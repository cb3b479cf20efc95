from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_q, random_tree
from tropcalc.core import Const, Linear, Max, Scale, Shift, sample_points
from tropcalc.nevanlinna import (
    characteristic,
    counting,
    log_rational,
    nevanlinna_report,
    order_estimate,
    proximity,
)
from tropcalc.special import notch, psi, sawtooth, trop_exp

seeds = st.integers(0, 2 ** 32)


def brute_counting(f, r):
    """Counting function from slopes on a fine dyadic-free scan of the breakpoints."""
    total = Fraction(0)
    pts = sample_points(f, -r - 1, r + 1)
    bps = [p for p in pts if -r < p < r]
    for b in bps:
        eps = min(abs(p - b) for p in pts if p != b) / 2
        left = (f(b) - f(b - eps)) / eps
        right = (f(b + eps) - f(b)) / eps
        if right < left:
            total += (left - right) * (r - abs(b))
    return total / 2


def test_examples():
    assert proximity(psi(), 2) == 2
    assert proximity(Const(-5), 7) == 0
    assert proximity(Linear(1, 0), 4) == 2
    absx = Max([Linear(1, 0), Linear(-1, 0)])
    assert counting(Scale(-1, absx), 3) == 3
    assert counting(psi(), 100) == 0
    assert counting(sawtooth(1, 1), 2) == 2
    assert characteristic(psi(), 2) == 2
    assert characteristic(Const(0), 5) == 0
    assert characteristic(trop_exp(2), 3) == Fraction(65, 16)


def test_radius_validation():
    with pytest.raises(ValueError):
        proximity(psi(), 0)
    with pytest.raises(ValueError):
        nevanlinna_report(psi(), [1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_counting_matches_brute_force(seed):
    rng = random.Random(seed)
    f = random_tree(rng, 2)
    r = abs(rand_q(rng, 1, 6, 4)) + Fraction(1, 4)
    assert counting(f, r) == brute_counting(f, r)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_t_is_m_plus_n_and_n_monotone_convex(seed):
    rng = random.Random(seed)
    f = random_tree(rng, 2)
    radii = [Fraction(k, 2) for k in range(1, 21)]
    ns = [counting(f, r) for r in radii]
    for r in radii:
        assert characteristic(f, r) == proximity(f, r) + counting(f, r)
    assert all(b >= a for a, b in zip(ns, ns[1:]))
    # convex on a uniform grid: second differences are nonnegative
    assert all(ns[i + 1] - 2 * ns[i] + ns[i - 1] >= 0 for i in range(1, len(ns) - 1))


@pytest.mark.parametrize("f", [psi(), trop_exp(2), trop_exp(3), Linear(2, 1)])
def test_entire_functions_have_no_counting(f):
    for r in (1, Fraction(7, 2), 10, 33):
        assert counting(f, r) == 0


def test_bounded_characteristic_flag():
    rep = nevanlinna_report(Const(-3))
    assert rep.order_estimate == 0.0
    assert "bounded characteristic" in rep.flags
    assert rep.hyper_order_estimate is None


def test_order_of_psi_and_notch():
    assert abs(order_estimate(psi())[0] - 2) <= 0.05
    assert abs(order_estimate(notch(Fraction(1, 2)))[0] - 2) <= 0.05


@pytest.mark.parametrize("c", [Fraction(-4), Fraction(-3, 2), Fraction(1, 3), Fraction(4)])
def test_order_is_shift_invariant(c):
    for f in (psi(), notch(Fraction(1, 3)), Linear(1, 0)):
        a, _ = order_estimate(f)
        b, _ = order_estimate(Shift(c, f))
        assert abs(a - b) <= 0.05


def test_log_rational_handles_huge_values():
    q = Fraction(2) ** 5000
    assert abs(log_rational(q) - 5000 * log_rational(Fraction(2))) < 1e-6
    with pytest.raises(ValueError):
        log_rational(Fraction(0))
