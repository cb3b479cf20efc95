"""``tropcalc`` command line.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 domain error, 4 the solved case is Open, 5 the family is only PartialKnown.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from .analysis import (
    bruck_check,
    fermat_examples,
    fermat_sum_check,
    hayman_census,
    hayman_linearity_check,
    root_census,
)
from .core import events_in, lattice, one_sided_slopes
from .documents import DocumentError, load_function
from .nevanlinna import nevanlinna_report
from .scalar import DomainError, as_rational, fmt
from .solver import COMPLETE, OPEN, EquationSpec, instantiate, make_grid, random_parameters, residual, solve

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_OPEN, EXIT_PARTIAL = 0, 1, 2, 3, 4, 5


class UsageError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"not an exact rational: {text!r}") from exc


def _window(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"window must look like LO:HI, got {text!r}")
    lo, hi = map(_rational, parts)
    if lo >= hi:
        raise UsageError("window needs LO < HI")
    return lo, hi


def _rational_list(items: list[str]) -> list[Fraction]:
    tokens = [t for item in items for t in re.split(r"[\s,]+", item.strip()) if t]
    return [_rational(t) for t in tokens]


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    f = load_function(args.spec)
    print(fmt(f(_rational(args.x))))
    return EXIT_OK


def cmd_plot(args) -> int:
    f = load_function(args.spec)
    lo, hi = _window(args.window)
    step = _rational(args.step)
    if step <= 0:
        raise UsageError("step must be positive")
    events = {e.location: e for e in events_in(f, lo, hi, closed=True)}
    xs = sorted(set(lattice(lo, step, lo, hi)) | set(f.breakpoints(lo, hi)) | {lo, hi})
    print("# x\tvalue\tleft_slope\tright_slope")
    for x in xs:
        if x in events:
            e = events[x]
            print(f"# event x={x} jump={e.jump} kind={e.kind} multiplicity={e.multiplicity}")
        left, right = one_sided_slopes(f, x)
        print(f"{x}\t{fmt(f(x))}\t{left}\t{right}")
    return EXIT_OK


def _spec_from(args) -> EquationSpec:
    coeffs = _rational_list(args.coefficients)
    if not coeffs:
        raise UsageError("no coefficients given")
    try:
        return EquationSpec(tuple(coeffs), _rational(args.rhs), _rational(args.rhs_slope))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    spec = _spec_from(args)
    try:
        family = solve(spec)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    _print_json(family.to_dict())
    if args.emit_instance and family.status != OPEN:
        params = random_parameters(family, random.Random(args.seed)) if args.seed is not None else {}
        with open(args.emit_instance, "w", encoding="utf-8") as fh:
            json.dump(instantiate(family, params).to_doc(), fh, indent=2)
    if family.status == OPEN:
        return EXIT_OPEN
    return EXIT_OK if family.status == COMPLETE else EXIT_PARTIAL


def cmd_verify(args) -> int:
    f = load_function(args.spec)
    spec = _spec_from(args)
    lo, hi = _window(args.window)
    grid = make_grid(args.grid, lo, hi, args.seed)
    r = residual(f, spec, grid)
    _print_json({
        "residual": str(r),
        "passed": r == 0,
        "grid_size": len(grid),
        "window": [str(lo), str(hi)],
        "seed": args.seed,
        "equation": spec.to_dict(),
    })
    return EXIT_OK if r == 0 else EXIT_FAIL


def cmd_nevanlinna(args) -> int:
    f = load_function(args.spec)
    radii = _rational_list(args.radii) if args.radii else None
    try:
        rep = nevanlinna_report(f, radii)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _print_json(rep.to_dict())
    return EXIT_OK


def cmd_roots(args) -> int:
    f = load_function(args.spec)
    lo, hi = _window(args.window)
    _print_json(root_census(f, lo, hi).to_dict())
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.kind == "fermat":
        if args.example:
            examples = fermat_examples()
            if args.example not in examples:
                raise UsageError(f"unknown example {args.example!r}; choose from {sorted(examples)}")
            fs, alphas = examples[args.example]
        else:
            fs = [load_function(p) for p in args.specs]
            alphas = _rational_list(args.alphas) if args.alphas else [Fraction(1)] * len(fs)
        if not fs:
            raise UsageError("fermat needs function documents or --example")
        window = _window(args.window) if args.window else (-8, 8)
        try:
            verdict = fermat_sum_check(fs, alphas, window, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _print_json(verdict.to_dict())
        return EXIT_OK
    if len(args.specs) != 1:
        raise UsageError(f"{args.kind} takes exactly one function document")
    f = load_function(args.specs[0])
    if args.kind == "hayman":
        window = _window(args.window) if args.window else (-20, 20)
        alpha, c = _rational(args.alpha), _rational(args.shift)
        census = hayman_census(f, alpha, c, window)
        lin = hayman_linearity_check(f, alpha, c, window)
        _print_json({"census": census.to_dict(), "linearity": lin.to_dict()})
        return EXIT_OK
    t0, t1 = _window(args.tails) if args.tails else (20, 40)
    try:
        rep = bruck_check(f, _rational(args.level), (t0, t1))
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    _print_json(rep.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_equation_args(p):
    p.add_argument("coefficients", nargs="+", help="n_0 ... n_s, as separate arguments or one quoted list")
    p.add_argument("--rhs", default="1", help="constant right-hand side c (default 1)")
    p.add_argument("--rhs-slope", default="0", help="slope a of an affine right-hand side a*x + c")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropcalc", description="Exact max-plus function calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a function document at x")
    p.add_argument("spec")
    p.add_argument("x")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("plot", help="TSV samples with slopes; breakpoints always included")
    p.add_argument("spec")
    p.add_argument("--window", default="-4:4", help="LO:HI (write --window=-4:4 for negative LO)")
    p.add_argument("--step", default="1/2")
    p.set_defaults(run=cmd_plot)

    p = sub.add_parser("solve", help="solution family of sum_j n_j y(x+j) = c as JSON")
    _add_equation_args(p)
    p.add_argument("--emit-instance", metavar="PATH", help="write an instantiated member as a function document")
    p.add_argument("--seed", type=int, default=None, help="randomize slot parameters of the emitted instance")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("verify", help="exact residual of a function against an equation")
    p.add_argument("spec")
    _add_equation_args(p)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", default="-8:8")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("nevanlinna", help="m, N, T and order estimates")
    p.add_argument("spec")
    p.add_argument("--radii", nargs="*", help="increasing radii (default 2^3 .. 2^13)")
    p.set_defaults(run=cmd_nevanlinna)

    p = sub.add_parser("roots", help="root census on a closed window")
    p.add_argument("spec")
    p.add_argument("--window", default="-10:10")
    p.set_defaults(run=cmd_roots)

    p = sub.add_parser("experiment", help="fermat | hayman | bruck checkers")
    p.add_argument("kind", choices=["fermat", "hayman", "bruck"])
    p.add_argument("specs", nargs="*")
    p.add_argument("--alphas", nargs="*", help="fermat: one exponent per function")
    p.add_argument("--example", help="fermat: a packaged example name")
    p.add_argument("--alpha", default="1", help="hayman: exponent alpha")
    p.add_argument("--shift", default="1", help="hayman: shift c")
    p.add_argument("--level", default="0", help="bruck: the constant a")
    p.add_argument("--tails", help="bruck: T0:T1, tails are [-T1,-T0] and [T0,T1]")
    p.add_argument("--window")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (DocumentError, UsageError) as exc:
        print(f"tropcalc: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ZeroDivisionError) as exc:
        print(f"tropcalc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"tropcalc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
