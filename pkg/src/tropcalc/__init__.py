"""Exact max-plus (tropical) function calculus.

Continuous piecewise-linear functions with rational data, their special
functions and value-distribution functionals, and a solver for linear
ultra-discrete difference equations of order at most three.
"""

from .scalar import BOTTOM, DomainError, TropScalar, as_rational, as_scalar, fmt
from .core import (
    BreakpointEvent,
    Const,
    FinitePL,
    Linear,
    Max,
    PLFunction,
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
    tmax,
    tmin,
)
from .special import (
    AntiPeriodicProfile,
    PeriodicProfile,
    antiperiodic_from_profile,
    bracket,
    exp_combination,
    notch,
    omega_special,
    periodic_from_profile,
    phi,
    psi,
    sawtooth,
    theta,
    trop_exp,
    upsilon,
    xi_triangle,
)
from .nevanlinna import NevanlinnaReport, characteristic, counting, order_estimate, proximity
from .solver import (
    CubicReduction,
    EquationSpec,
    SolutionFamily,
    classify,
    instantiate,
    residual,
    solve,
    solve_four_term,
    solve_second_order_homogeneous,
    solve_three_term,
    solve_two_term,
)

__version__ = "0.1.0"
