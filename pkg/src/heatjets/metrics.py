"""Conformal-factor specifications: parsing and expansion to jets.

A metric is described by a small JSON document giving the conformal factor
rho in isothermal coordinates, ds^2 = rho (du^2 + dv^2), with the base
point fixed at the chart origin.  Rationals travel as strings "p/q".

Supported kinds:

  {"kind": "flat"}                               rho = 1
  {"kind": "sphereStereographic", "R": "p/q"}    rho = 4 R^4 / (R^2+u^2+v^2)^2
  {"kind": "reciprocalLinear",
   "a0": "p/q", "a1": "p/q", "a2": "p/q"}        rho = 1 / (a0 + a1 u + a2 v)
  {"kind": "jet", "order": N,
   "coeffs": [[a, b, "p/q"], ...]}               explicit Taylor coefficients

Named families expand to any requested order; an explicit jet carries only
its declared order and can be zero-extended on request (which reads the
spec as a polynomial conformal factor).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidMetric, OrderExhausted, SchemaError
from .jets import Jet2D

KINDS = ("flat", "sphereStereographic", "reciprocalLinear", "jet")


@dataclass(frozen=True)
class MetricSpec:
    kind: str
    radius: Fraction | None = None
    linear: tuple | None = None          # (a0, a1, a2) for reciprocalLinear
    coeffs: tuple | None = None          # ((a, b, Fraction), ...) for jet
    order: int | None = None             # declared order for jet


def _rational(value, path):
    if isinstance(value, bool):
        raise SchemaError(path, "expected a rational string \"p/q\"")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"not a rational \"p/q\": {value!r}")
    raise SchemaError(path, "expected a rational string \"p/q\"")


def _index(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected a nonnegative integer")
    if value < 0:
        raise SchemaError(path, "expected a nonnegative integer")
    return value


def _reject_extras(doc, allowed):
    for key in doc:
        if key not in allowed:
            raise SchemaError(key, "unexpected field")


def parse_metric_spec(source) -> MetricSpec:
    """Parse a JSON document (text, bytes, or dict) into a MetricSpec."""
    if isinstance(source, (bytes, bytearray)):
        source = source.decode("utf-8")
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError("<document>", f"invalid JSON: {exc}")
    else:
        doc = source
    if not isinstance(doc, dict):
        raise SchemaError("<document>", "expected a JSON object")
    kind = doc.get("kind")
    if kind is None:
        raise SchemaError("kind", "missing field")
    if kind not in KINDS:
        raise SchemaError("kind", f"unknown kind {kind!r}; "
                          f"expected one of {', '.join(KINDS)}")

    if kind == "flat":
        _reject_extras(doc, {"kind"})
        return MetricSpec(kind="flat")

    if kind == "sphereStereographic":
        _reject_extras(doc, {"kind", "R"})
        if "R" not in doc:
            raise SchemaError("R", "missing field")
        radius = _rational(doc["R"], "R")
        if radius <= 0:
            raise InvalidMetric("sphere radius must be positive")
        return MetricSpec(kind="sphereStereographic", radius=radius)

    if kind == "reciprocalLinear":
        _reject_extras(doc, {"kind", "a0", "a1", "a2"})
        values = []
        for name in ("a0", "a1", "a2"):
            if name not in doc:
                raise SchemaError(name, "missing field")
            values.append(_rational(doc[name], name))
        if values[0] == 0:
            raise InvalidMetric("reciprocalLinear requires a0 != 0")
        return MetricSpec(kind="reciprocalLinear", linear=tuple(values))

    _reject_extras(doc, {"kind", "order", "coeffs"})
    if "order" not in doc:
        raise SchemaError("order", "missing field")
    order = _index(doc["order"], "order")
    raw = doc.get("coeffs")
    if not isinstance(raw, list):
        raise SchemaError("coeffs", "expected a list of [a, b, \"p/q\"] triples")
    seen = {}
    for i, entry in enumerate(raw):
        path = f"coeffs[{i}]"
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise SchemaError(path, "expected a triple [a, b, \"p/q\"]")
        a = _index(entry[0], f"{path}[0]")
        b = _index(entry[1], f"{path}[1]")
        value = _rational(entry[2], f"{path}[2]")
        if (a, b) in seen:
            raise SchemaError(path, f"duplicate coefficient ({a}, {b})")
        if a + b > order:
            raise InvalidMetric(
                f"coefficient ({a}, {b}) exceeds declared order {order}")
        seen[(a, b)] = value
    if seen.get((0, 0), Fraction(0)) == 0:
        raise InvalidMetric("jet constant term must be nonzero")
    triples = tuple(sorted((a, b, c) for (a, b), c in seen.items()))
    return MetricSpec(kind="jet", coeffs=triples, order=order)


def load_metric_spec(path) -> MetricSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_metric_spec(fh.read())


def expand_metric(spec: MetricSpec, order: int, extend=False) -> Jet2D:
    """Taylor-expand the conformal factor at the origin to the given order.

    Named families expand exactly to any order.  An explicit jet is
    truncated if the request is lower than its declared order; raising the
    order requires `extend`, which fills with zeros (reading the listed
    coefficients as a polynomial conformal factor).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if spec.kind == "flat":
        return Jet2D.constant(Fraction(1), order)
    if spec.kind == "sphereStereographic":
        r2 = spec.radius ** 2
        base = Jet2D({(0, 0): r2, (2, 0): Fraction(1), (0, 2): Fraction(1)},
                     order=order)
        return (base * base).inverse() * (4 * r2 ** 2)
    if spec.kind == "reciprocalLinear":
        a0, a1, a2 = spec.linear
        lin = Jet2D({(0, 0): a0, (1, 0): a1, (0, 1): a2}, order=order)
        return lin.inverse()
    coeffs = {(a, b): c for a, b, c in spec.coeffs}
    if order <= spec.order:
        return Jet2D(coeffs, order=spec.order).truncate(order)
    if not extend:
        raise OrderExhausted(
            f"metric jet is declared to order {spec.order} but order "
            f"{order} is required; pass --jet-order {order} to zero-extend")
    return Jet2D(coeffs, order=order)
