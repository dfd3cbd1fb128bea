"""Command-line front end: `heatinv`.

Three subcommands:

  compute    closed forms (symbolic) or exact values (numeric) of a_n
  verify     built-in acceptance checks, quick or full
  curvature  curvature frame of a metric at the base point

Exit codes: 0 success, 2 schema or usage error, 3 mathematical
precondition failure (insufficient jet order, degenerate or singular
input), 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .commutator import (
    RationalMatrix,
    filtration_vectors,
    x_operator_by_sum,
    x_operator_closed,
    x_operator_recurrence,
)
from .curvature import (
    curvature_frame,
    heat_invariant_curvature_form,
)
from .errors import (
    DegenerateCurvatureCoordinates,
    HeatjetsError,
    IllConditionedFit,
    IndexOutOfRange,
    InvalidMetric,
    NonInvertibleConstantTerm,
    OrderExhausted,
    SchemaError,
    SingularFrame,
    TailNotConverged,
)
from .heatinv import (
    WEYL_A0,
    heat_invariant,
    heat_invariant_via_frozen,
    render_closed_form,
    render_pi_scaled,
    closed_form_to_json,
    symbolic_heat_invariant,
)
from .jets import Jet2D
from .metrics import expand_metric, load_metric_spec
from .rhopoly import PiScaled

INPUT_ERRORS = (SchemaError, InvalidMetric)
PRECONDITION_ERRORS = (OrderExhausted, NonInvertibleConstantTerm,
                       DegenerateCurvatureCoordinates, SingularFrame,
                       IndexOutOfRange, TailNotConverged, IllConditionedFit)


class UsageError(Exception):
    """Flag combinations the schema cannot express."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heatinv",
        description="Exact heat-kernel coefficients a_n(x) of surfaces "
                    "given by a conformal factor.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser(
        "compute",
        help="compute a_n symbolically or for a concrete metric")
    c.add_argument("--metric", metavar="FILE",
                   help="metric-spec JSON file; omit for a fully "
                        "generic (symbolic) conformal factor")
    c.add_argument("--n", dest="ns", action="append", type=int,
                   required=True, metavar="N",
                   help="coefficient index; repeatable")
    c.add_argument("--mode", choices=("symbolic", "numeric"),
                   help="default: numeric with --metric, else symbolic")
    c.add_argument("--path", choices=("eq311", "eq310", "curvature"),
                   default="eq311",
                   help="evaluation route (default eq311)")
    c.add_argument("--format", dest="fmt",
                   choices=("plain", "latex", "json"), default="plain")
    c.add_argument("--approx", type=int, metavar="DIGITS",
                   help="append a decimal approximation (numeric mode)")
    c.add_argument("--jet-order", dest="jet_order", type=int, metavar="ORDER",
                   help="working jet order; zero-extends an explicit jet")
    c.set_defaults(func=_cmd_compute)

    v = sub.add_parser("verify", help="run built-in acceptance checks")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.set_defaults(func=_cmd_verify)

    k = sub.add_parser(
        "curvature",
        help="print the curvature frame (K0, DeltaK0, E, F, G, degeneracy)")
    k.add_argument("--metric", metavar="FILE", required=True)
    k.add_argument("--jet-order", dest="jet_order", type=int, metavar="ORDER")
    k.set_defaults(func=_cmd_curvature)
    return parser


# -- compute -----------------------------------------------------------------

def _needed_order(n: int, path: str) -> int:
    if n == 0:
        return 0
    return 8 * n + (6 if path == "curvature" else 0)


def _expand_for(args, needed: int) -> Jet2D:
    spec = load_metric_spec(args.metric)
    if args.jet_order is not None:
        if args.jet_order < 0:
            raise UsageError("--jet-order must be nonnegative")
        return expand_metric(spec, args.jet_order, extend=True)
    if spec.kind == "jet":
        return expand_metric(spec, spec.order)
    return expand_metric(spec, needed)


def _approx_string(value: PiScaled, digits: int) -> str:
    import mpmath
    with mpmath.workdps(digits + 10):
        x = mpmath.mpf(value.q.numerator) / value.q.denominator
        x = x / mpmath.pi ** value.pi_power
        return mpmath.nstr(x, digits)


def _cmd_compute(args) -> int:
    ns = args.ns
    if any(n < 0 for n in ns):
        raise UsageError("--n must be nonnegative")
    mode = args.mode or ("numeric" if args.metric else "symbolic")
    if mode == "symbolic":
        if args.metric:
            raise UsageError(
                "symbolic mode takes no --metric; the conformal factor "
                "is fully generic")
        if args.path == "curvature":
            raise UsageError("the curvature path needs a concrete metric")
        if args.approx is not None:
            raise UsageError("--approx applies to numeric results only")
        if args.jet_order is not None:
            raise UsageError("--jet-order applies to concrete metrics only")
    else:
        if not args.metric:
            raise UsageError("numeric mode requires --metric")
    if args.approx is not None and args.approx < 1:
        raise UsageError("--approx needs at least one digit")

    rho = None
    if mode == "numeric":
        needed = max(_needed_order(n, args.path) for n in ns)
        rho = _expand_for(args, needed)

    results = []
    for n in ns:
        start = time.perf_counter()
        if n == 0:
            value, order = WEYL_A0, 0
        elif mode == "symbolic":
            res = symbolic_heat_invariant(n, via_frozen=args.path == "eq310")
            value, order = res.form, res.truncation_order
        else:
            work = rho.truncate(min(_needed_order(n, args.path), rho.order))
            if args.path == "eq311":
                res = heat_invariant(n, work)
            elif args.path == "eq310":
                res = heat_invariant_via_frozen(n, work)
            else:
                res = heat_invariant_curvature_form(n, work)
            value, order = res.form, res.truncation_order
        results.append((n, value, order, time.perf_counter() - start))

    if args.fmt == "json":
        payload = []
        for n, value, order, wall in results:
            if isinstance(value, PiScaled):
                doc = {"kind": "numeric", "q": str(value.q),
                       "piPower": value.pi_power}
                if args.approx is not None:
                    doc["approx"] = _approx_string(value, args.approx)
            else:
                doc = closed_form_to_json(value)
            payload.append({"n": n, "truncationOrder": order,
                            "wallTimeSeconds": round(wall, 6),
                            "value": doc})
        report = {"command": "compute", "mode": mode, "path": args.path,
                  "results": payload}
        print(json.dumps(report, indent=2))
        return 0

    for n, value, order, _ in results:
        if isinstance(value, PiScaled):
            text = render_pi_scaled(value, args.fmt)
            if args.approx is not None:
                text += f" (approx {_approx_string(value, args.approx)})"
        else:
            text = render_closed_form(value, args.fmt)
        print(f"a_{n} = {text}")
    return 0


# -- curvature ---------------------------------------------------------------

def _cmd_curvature(args) -> int:
    needed = 8
    frame = curvature_frame(_expand_for(args, needed))
    print(f"K0 = {frame.k0}")
    print(f"DeltaK0 = {frame.dk0}")
    print(f"E = {frame.e}")
    print(f"F = {frame.f}")
    print(f"G = {frame.g}")
    print(f"degenerate = {'yes' if frame.degenerate else 'no'}")
    return 0


# -- verify ------------------------------------------------------------------

def _random_jet(rng: random.Random, order: int = 16) -> Jet2D:
    coeffs = {}
    for a in range(order + 1):
        for b in range(order + 1 - a):
            coeffs[(a, b)] = Fraction(rng.randint(-40, 40),
                                      rng.randint(1, 12))
    coeffs[(0, 0)] = abs(coeffs[(0, 0)]) + 1
    return Jet2D(coeffs, order=order)


def _sphere_jet(order: int) -> Jet2D:
    base = Jet2D({(0, 0): Fraction(1), (2, 0): Fraction(1),
                  (0, 2): Fraction(1)}, order=order)
    return (base * base).inverse() * 4


def _check_a1_golden():
    from .oracle import golden_a1
    poly, pi_power = golden_a1()
    form = symbolic_heat_invariant(1).form
    if form.poly != poly or form.pi_power != pi_power:
        return "symbolic a_1 differs from the classical closed form"


def _check_flat_zero(n_values, constants):
    for c in constants:
        rho = Jet2D.constant(Fraction(c), 8 * max(n_values))
        for n in n_values:
            got = heat_invariant(n, rho.truncate(8 * n)).form
            if got.q != 0:
                return f"a_{n}(rho={c}) = {got.q}, expected 0"


def _check_sphere_a1():
    got = heat_invariant(1, _sphere_jet(8)).form
    if got != PiScaled(Fraction(1, 12), 1):
        return f"sphere a_1 = {got.q}/pi^{got.pi_power}, expected 1/(12*pi)"


def _check_cross_path():
    rng = random.Random(20240901)
    for _ in range(3):
        rho = _random_jet(rng)
        for n in (1, 2):
            a = heat_invariant(n, rho.truncate(8 * n)).form
            b = heat_invariant_via_frozen(n, rho.truncate(8 * n)).form
            if a != b:
                return f"paths disagree at n={n}"


def _check_curvature_path():
    rng = random.Random(20240902)
    found = 0
    while found < 2:
        rho = _random_jet(rng)
        if curvature_frame(rho).degenerate:
            continue
        found += 1
        a = heat_invariant(1, rho.truncate(8)).form
        b = heat_invariant_curvature_form(1, rho.truncate(14)).form
        if a != b:
            return "curvature-coordinate value disagrees with direct path"
    try:
        heat_invariant_curvature_form(1, _sphere_jet(14))
    except DegenerateCurvatureCoordinates:
        return None
    return "degenerate sphere jet was not rejected"


def _check_commutator():
    rng = random.Random(20240903)
    x = RationalMatrix.random(4, rng)
    a = RationalMatrix.random(4, rng)
    for m in range(1, 6):
        by_sum = x_operator_by_sum(x, a, m)
        rec = x_operator_recurrence(x, a, m)
        closed = x_operator_closed(x, a, m)
        if not (by_sum == rec == closed):
            return f"X_{m} mismatch across definitions"
    for m in range(6, 9):
        if x_operator_recurrence(x, a, m) != x_operator_closed(x, a, m):
            return f"X_{m} recurrence/closed mismatch"
    for m in range(1, 11):
        if len(list(filtration_vectors(m))) != 2 ** (m - 1):
            return f"|V_{m}| != 2^{m - 1}"


def _check_scaling_and_rotation():
    rng = random.Random(20240904)
    rho = _random_jet(rng, order=8)
    base = heat_invariant(1, rho).form
    for c in (Fraction(2), Fraction(3, 5)):
        scaled = heat_invariant(1, rho * c).form
        if scaled != base * Fraction(1, c):
            return f"a_1({c} rho) != {c}^-1 a_1(rho)"
    rotated = rho.compose_linear(Fraction(3, 5), Fraction(-4, 5),
                                 Fraction(4, 5), Fraction(3, 5))
    if heat_invariant(1, rotated).form != base:
        return "a_1 moved under a Pythagorean rotation"
    form = symbolic_heat_invariant(1).form
    if form.poly.weights() != {2}:
        return "symbolic a_1 is not 2-homogeneous in derivative order"


def _check_flat_zero_n3():
    return _check_flat_zero([3], [Fraction(7, 3)])


def _check_sphere_a2_spectral():
    import mpmath
    from .oracle import SphereSpectrum, fit_diagonal_coefficients
    exact = heat_invariant(2, _sphere_jet(16)).form
    fit = fit_diagonal_coefficients(SphereSpectrum(Fraction(1)), n_terms=3)
    with mpmath.workdps(40):
        target = (mpmath.mpf(exact.q.numerator) / exact.q.denominator
                  / mpmath.pi ** exact.pi_power)
        rel = abs(fit.coefficients[2] - target) / abs(target)
        if rel > mpmath.mpf(10) ** -6:
            return f"spectral a_2 off by {mpmath.nstr(rel, 3)} relative"


QUICK_CHECKS = [
    ("a1-closed-form-identity", _check_a1_golden),
    ("flat-zeros-n1-n2", lambda: _check_flat_zero([1, 2],
                                                  [1, Fraction(7, 3)])),
    ("sphere-a1-exact", _check_sphere_a1),
    ("cross-path-equality", _check_cross_path),
    ("curvature-path-equality", _check_curvature_path),
    ("commutator-three-way", _check_commutator),
    ("scaling-rotation-homogeneity", _check_scaling_and_rotation),
]

FULL_CHECKS = QUICK_CHECKS + [
    ("flat-zero-n3", _check_flat_zero_n3),
    ("sphere-a2-spectral-fit", _check_sphere_a2_spectral),
]


def _cmd_verify(args) -> int:
    checks = FULL_CHECKS if args.level == "full" else QUICK_CHECKS
    failures = 0
    for name, check in checks:
        try:
            detail = check()
        except Exception as exc:  # a crash is a failure, not an abort
            detail = f"{type(exc).__name__}: {exc}"
        if detail is None:
            print(f"PASS {name}")
        else:
            failures += 1
            print(f"FAIL {name}: {detail}")
    print(f"{len(checks) - failures}/{len(checks)} criteria passed")
    return 4 if failures else 0


# -- entry point ---------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "fmt", "plain")
    try:
        return args.func(args)
    except UsageError as exc:
        _emit_error(exc, fmt, kind="usage")
        return 2
    except INPUT_ERRORS as exc:
        _emit_error(exc, fmt, kind="input")
        return 2
    except OSError as exc:
        _emit_error(exc, fmt, kind="io")
        return 2
    except PRECONDITION_ERRORS as exc:
        _emit_error(exc, fmt, kind="precondition")
        return 3


def _emit_error(exc, fmt: str, kind: str) -> None:
    if fmt == "json":
        doc = {"error": {"kind": kind, "type": type(exc).__name__,
                         "message": str(exc)}}
        path = getattr(exc, "path", None)
        if path is not None:
            doc["error"]["path"] = path
        print(json.dumps(doc, indent=2))
    else:
        print(f"error: {exc}", file=sys.stderr)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
