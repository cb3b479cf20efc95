"""JSON documents for functions: ``parse_document(f.to_doc())`` rebuilds ``f``.

Numbers travel as exact strings (``"3"``, ``"-7/2"``, ``"-inf"``).
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .core import Const, FinitePL, Linear, PLFunction, Scale, Shift, Sum, tmax
from .quadratic import QuadSurd
from .scalar import as_rational, as_scalar
from .special import (
    AntiPeriodicFn,
    AntiPeriodicProfile,
    Bracket,
    Notch,
    OmegaFn,
    PeriodicFn,
    PeriodicProfile,
    PhiFn,
    Psi,
    QuadExp,
    Sawtooth,
    ThetaFn,
    TropExp,
    Upsilon,
)

__all__ = ["DocumentError", "parse_document", "emit_document", "load_function", "dumps"]


class DocumentError(ValueError):
    """A function document is malformed."""


def _num(doc: dict, key: str, default=None):
    if key not in doc:
        if default is None:
            raise DocumentError(f"missing field {key!r} in {doc.get('kind')!r} node")
        return as_rational(default)
    return as_rational(doc[key])


def _points(raw):
    return tuple((as_rational(t), as_rational(v)) for t, v in raw)


def _periodic_child(doc: dict) -> PeriodicFn:
    child = parse_document(doc["periodic"])
    if not isinstance(child, PeriodicFn):
        raise DocumentError("field 'periodic' must describe a periodic function")
    return child


def _children(doc):
    kids = doc.get("children")
    if not isinstance(kids, list) or not kids:
        raise DocumentError(f"{doc['kind']!r} node needs a nonempty 'children' list")
    return [parse_document(c) for c in kids]


_BUILDERS = {
    "const": lambda d: Const(as_scalar(d.get("value", "0"))),
    "linear": lambda d: Linear(_num(d, "slope"), _num(d, "intercept", 0)),
    "finite_pl": lambda d: FinitePL(_points(d["points"]), _num(d, "left_slope", 0), _num(d, "right_slope", 0)),
    "max": lambda d: tmax(*_children(d)),
    "sum": lambda d: Sum(_children(d)),
    "scale": lambda d: Scale(_num(d, "factor"), parse_document(d["child"])),
    "shift": lambda d: Shift(_num(d, "offset"), parse_document(d["child"])),
    "sawtooth": lambda d: Sawtooth(_num(d, "a", 1), _num(d, "b", 1)),
    "notch": lambda d: Notch(_num(d, "a")),
    "exp": lambda d: TropExp(_num(d, "base"), _num(d, "step", 1), _num(d, "shift", 0)),
    "quad_exp": lambda d: QuadExp(
        QuadSurd.from_dict(d["lam"]),
        QuadSurd.from_dict(d["gamma"]) if "gamma" in d else None,
        _num(d, "shift", 0),
    ),
    "psi": lambda d: Psi(_num(d, "period", 1)),
    "phi": lambda d: PhiFn(_periodic_child(d)),
    "theta": lambda d: ThetaFn(_periodic_child(d)),
    "omega": lambda d: OmegaFn(_periodic_child(d)),
    "upsilon": lambda d: Upsilon(),
    "periodic": lambda d: PeriodicFn(PeriodicProfile(_points(d["points"]), _num(d, "period", 1))),
    "antiperiodic": lambda d: AntiPeriodicFn(AntiPeriodicProfile(_points(d["points"]), _num(d, "half_period", 1))),
    "bracket": lambda d: Bracket(parse_document(d["child"]), _num(d, "x0"), degree=int(d.get("degree", 1))),
}


def parse_document(doc: Any) -> PLFunction:
    """Build a function from its JSON tree; raises :class:`DocumentError`."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DocumentError("a function document is an object with a 'kind' field")
    kind = doc["kind"]
    if kind not in _BUILDERS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {sorted(_BUILDERS)}")
    try:
        return _BUILDERS[kind](doc)
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad {kind!r} node: {exc}") from exc


def emit_document(f: PLFunction) -> dict:
    return f.to_doc()


def dumps(f: PLFunction) -> str:
    return json.dumps(emit_document(f), indent=2)


def load_function(path: str) -> PLFunction:
    """Read a document from ``path`` (``-`` for stdin)."""
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return parse_document(doc)
