"""Shared strategies and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from tropcalc.core import Const, FinitePL, Linear, PLFunction, Scale, Shift, Sum, tmax
from tropcalc.special import notch, psi, sawtooth, trop_exp



def rationals(lo=-20, hi=20, max_den=12):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def small_rationals():
    return rationals(-6, 6, 6)


def rand_q(rng: random.Random, lo=-5, hi=5, den=8) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_x(rng: random.Random, lo=-8, hi=8) -> Fraction:
    den = rng.randint(1, 97)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_leaf(rng: random.Random) -> PLFunction:
    pick = rng.randrange(7)
    if pick == 0:
        return Const(rand_q(rng))
    if pick == 1:
        return Linear(rand_q(rng), rand_q(rng))
    if pick == 2:
        xs = sorted({rand_q(rng) for _ in range(rng.randint(1, 4))})
        return FinitePL([(x, rand_q(rng)) for x in xs], rand_q(rng), rand_q(rng))
    if pick == 3:
        return sawtooth(rng.randint(1, 4), rng.randint(1, 4))
    if pick == 4:
        return notch(Fraction(rng.randrange(1, 8), 8))
    if pick == 5:
        return psi()
    return trop_exp(rng.choice([2, 3, Fraction(1, 2), -2, Fraction(-1, 2)]))


def random_tree(rng: random.Random, depth: int = 3) -> PLFunction:
    """A random expression tree of max / sum / scale / shift nodes."""
    if depth == 0 or rng.random() < 0.3:
        return random_leaf(rng)
    op = rng.randrange(4)
    if op == 0:
        return tmax(*(random_tree(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if op == 1:
        return Sum([random_tree(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    if op == 2:
        return Scale(rand_q(rng, -3, 3, 4), random_tree(rng, depth - 1))
    return Shift(rand_q(rng, -2, 2, 4), random_tree(rng, depth - 1))


def trees(depth: int = 3):
    return st.integers(0, 2 ** 32).map(lambda s: random_tree(random.Random(s), depth))


ROOT_POOL = [1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, Fraction(-1, 3)]


def random_coefficients(rng: random.Random, s: int) -> list[Fraction]:
    """Coefficients ``n_0..n_s``: half uniformly random, half with roots from a pool of special values."""
    if rng.random() < 0.5:
        cs = [rand_q(rng, -6, 6, 3) for _ in range(s + 1)]
        if cs[-1] == 0:
            cs[-1] = Fraction(1)
        return cs
    poly = [Fraction(1)]
    for r in (rng.choice(ROOT_POOL) for _ in range(s)):
        new = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            new[j + 1] += c
            new[j] -= r * c
        poly = new
    k = rand_q(rng, -6, 6, 3) or Fraction(1)
    return [k * c for c in poly]


def random_tropical_polynomial_pool(rng: random.Random):
    """One to three nonconstant tropical polynomials with positive exponents."""
    from tropcalc.analysis import random_tropical_polynomial

    fs = [random_tropical_polynomial(rng) for _ in range(rng.randint(1, 3))]
    alphas = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in fs]
    return fs, alphas
