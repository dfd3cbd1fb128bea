"""Heat-kernel diagonal coefficients a_n(x) for conformal 2-D metrics.

For ds^2 = rho(u,v)(du^2 + dv^2) the heat kernel diagonal expands as
K(t,x,x) ~ (1/t) sum_n a_n(x) t^n, and each a_n at the origin of the chart
is a finite sum of iterated-Laplacian images of monomials:

    a_n = sum_{m=n+1..4n} sum_{k=n+1..m} sum_{s=0..k-n}
          C_nksm * rho_0^(k-n) * Delta^k(u^(2k-2n-2s) v^(2s)) |_(0,0)

with exact constants C_nksm that are rationals times 1/pi.  Feeding the
fully generic conformal factor (Taylor coefficients as formal variables)
through the same pipeline yields a_n as a closed-form rational polynomial
in the metric derivatives; feeding a concrete rational jet yields an exact
number q/pi.

An equivalent second route expands the resolvent around the origin-frozen
Laplacian Delta_0 and sums binomially weighted mixed powers
Delta^k Delta_0^(m-k) applied to explicit seed polynomials.  The two routes
share no constants and must agree exactly; the test suite relies on that.

Everything here is exact: rationals, rational polynomials, and a tracked
power of 1/pi.  Decimal output is a presentation concern handled elsewhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import IndexOutOfRange, OrderExhausted
from .jets import Jet2D
from .laplace import ConformalLaplacian, FrozenLaplacian
from .rhopoly import PiScaled, RhoPoly

#: Universal leading (Weyl) coefficient in dimension 2: a_0 = 1/(4 pi).
#: Not produced by the main sum (its index ranges are empty at n = 0);
#: sourced from eigenvalue-counting asymptotics instead.
WEYL_A0 = PiScaled(Fraction(1, 4), 1)


def gamma_half_rational(j: int) -> Fraction:
    """q with Gamma(j + 1/2) = q sqrt(pi), i.e. (2j)! / (4^j j!)."""
    if j < 0:
        raise IndexOutOfRange(f"Gamma(j + 1/2) ratio needs j >= 0, got {j}")
    return Fraction(factorial(2 * j), 4 ** j * factorial(j))


def heat_constant(n: int, k: int, s: int, m: int) -> PiScaled:
    """The exact constant C_nksm multiplying one monomial image.

    C_nksm = (-1)^n/(4 pi^2) * sum_{l=0}^{m-k}
             Gamma(k+l-n-s+1/2) Gamma(s+m-k-l+1/2)
             / (k! l! (m-k-l)! (2k-2n-2s)! (2s)!);

    the two sqrt(pi) factors combine so the value is rational times 1/pi.
    """
    if not (n >= 1 and n + 1 <= k <= m <= 4 * n and 0 <= s <= k - n):
        raise IndexOutOfRange(
            f"indices (n,k,s,m)=({n},{k},{s},{m}) outside the summation "
            "ranges n+1 <= k <= m <= 4n, 0 <= s <= k-n")
    total = Fraction(0)
    for l in range(m - k + 1):
        g = gamma_half_rational(k + l - n - s) * gamma_half_rational(s + m - k - l)
        total += g / (factorial(k) * factorial(l) * factorial(m - k - l)
                      * factorial(2 * k - 2 * n - 2 * s) * factorial(2 * s))
    return PiScaled(Fraction((-1) ** n, 4) * total, 1)


def generic_rho_jet(order: int) -> Jet2D:
    """The fully generic conformal factor: every Taylor coefficient a variable."""
    coeffs = {(a, b): RhoPoly.var(a, b)
              for a in range(order + 1) for b in range(order + 1 - a)}
    return Jet2D(coeffs, order)


@dataclass(frozen=True)
class ClosedForm:
    """a_n as an exact polynomial identity: poly * pi^(-pi_power).

    `poly` lives in the Taylor-coefficient variables rho_ab over a power of
    rho_00; every numerator monomial has derivative-order weight exactly 2n.
    """
    n: int
    poly: RhoPoly
    pi_power: int

    def substitute(self, rho: Jet2D) -> PiScaled:
        """Evaluate at a concrete rational jet."""
        values = {key: c for key, c in rho.coeffs.items()}
        q = self.poly.substitute(values)
        return PiScaled(q, self.pi_power)


@dataclass(frozen=True)
class HeatInvariantResult:
    n: int
    form: object  # ClosedForm for a symbolic run, PiScaled for a numeric one
    truncation_order: int
    path: str


def _is_symbolic(rho: Jet2D) -> bool:
    return isinstance(rho.constant_term(), RhoPoly)


def _wrap(n, total, symbolic, order, path) -> HeatInvariantResult:
    if symbolic:
        form = ClosedForm(n=n, poly=total, pi_power=1)
    else:
        form = PiScaled(total, 1)
    return HeatInvariantResult(n=n, form=form, truncation_order=order,
                               path=path)


def _require_order(n: int, rho: Jet2D) -> None:
    if rho.order < 8 * n:
        raise OrderExhausted(
            f"a_{n} needs a conformal factor jet of order >= {8 * n}, "
            f"got {rho.order}")


def heat_invariant(n: int, rho: Jet2D) -> HeatInvariantResult:
    """a_n(origin) by the direct monomial-image sum.

    Terms sharing (k, s) differ only in their constant, so the m-sum is
    collapsed into one weight per (k, s) and each Delta^k image is computed
    once.  For the generic conformal factor the u <-> v relabeling symmetry
    additionally identifies the s and k-n-s images, halving the work; that
    shortcut is unsound for concrete jets and is only taken symbolically.
    """
    if n < 1:
        raise IndexOutOfRange(f"heat_invariant needs n >= 1, got {n}")
    _require_order(n, rho)
    symbolic = _is_symbolic(rho)
    lap = ConformalLaplacian(rho)
    rho0 = rho.constant_term()
    parts = []
    for k in range(n + 1, 4 * n + 1):
        smax = k - n
        weights = []
        for s in range(smax + 1):
            q = Fraction(0)
            for m in range(k, 4 * n + 1):
                q += heat_constant(n, k, s, m).q
            weights.append(q)
        images = {}
        for s in range(smax + 1):
            if s in images:
                continue
            mono = Jet2D.monomial(2 * k - 2 * n - 2 * s, 2 * s, order=2 * k)
            img = lap.apply_power(mono, k).constant_term()
            images[s] = img
            mirror = smax - s
            if symbolic and mirror != s:
                images[mirror] = img.swap_uv() if img else img
        for s in range(smax + 1):
            img = images[s]
            if weights[s] and img:
                parts.append((rho0 ** (k - n) * img) * weights[s])
    if symbolic:
        total = RhoPoly.sum(parts)
    else:
        total = sum(parts, Fraction(0))
    return _wrap(n, total, symbolic, rho.order, "eq311")


def heat_invariant_via_frozen(n: int, rho: Jet2D) -> HeatInvariantResult:
    """a_n(origin) by the independent frozen-operator binomial route.

    a_n = sum_m rho_0^(m-n) (-1)^(m-n)/(4 m!) *
          sum_{k=0}^m (-1)^k C(m,k) Delta^k Delta_0^(m-k) (f_m) |_(0,0),

    where the seed f_m = sum_p g(m-n-p) g(p) u^(2m-2n-2p) v^(2p)
    / ((2m-2n-2p)! (2p)!) and g is the rational Gamma(.+1/2) ratio.  No
    constant is shared with heat_invariant beyond those ratios.
    """
    if n < 1:
        raise IndexOutOfRange(f"heat_invariant needs n >= 1, got {n}")
    _require_order(n, rho)
    symbolic = _is_symbolic(rho)
    lap = ConformalLaplacian(rho)
    frozen = FrozenLaplacian(rho)
    rho0 = rho.constant_term()
    parts = []
    for m in range(n + 1, 4 * n + 1):
        seed_coeffs = {}
        for p in range(m - n + 1):
            w = (gamma_half_rational(m - n - p) * gamma_half_rational(p)
                 / (factorial(2 * m - 2 * n - 2 * p) * factorial(2 * p)))
            seed_coeffs[(2 * m - 2 * n - 2 * p, 2 * p)] = w
        seed = Jet2D(seed_coeffs, 2 * m)
        frozen_images = [seed]
        for _ in range(m):
            frozen_images.append(frozen.apply(frozen_images[-1]))
        inner = []
        for k in range(m + 1):
            val = lap.apply_power(frozen_images[m - k], k).constant_term()
            if val:
                inner.append(val * ((-1) ** k * comb(m, k)))
        if not inner:
            continue
        tot = RhoPoly.sum(inner) if symbolic else sum(inner, Fraction(0))
        factor = Fraction((-1) ** (m - n), 4 * factorial(m))
        parts.append((rho0 ** (m - n) * tot) * factor)
    if symbolic:
        total = RhoPoly.sum(parts)
    else:
        total = sum(parts, Fraction(0))
    return _wrap(n, total, symbolic, rho.order, "eq310")


def symbolic_heat_invariant(n: int, via_frozen: bool = False) -> HeatInvariantResult:
    """Closed-form a_n for the fully generic conformal factor."""
    rho = generic_rho_jet(8 * n)
    if via_frozen:
        return heat_invariant_via_frozen(n, rho)
    return heat_invariant(n, rho)


# -- rendering ---------------------------------------------------------------

def _var_index(a: int, b: int) -> int:
    """Total order of the derivative variables: rho < rho_u < rho_v < rho_uu < ..."""
    return (a + b) * (a + b + 1) // 2 + b


def _var_name(a: int, b: int, latex: bool = False) -> str:
    if a == 0 and b == 0:
        return r"\rho" if latex else "rho"
    sub = "u" * a + "v" * b
    return rf"\rho_{{{sub}}}" if latex else f"rho_{sub}"


def _derivative_value_terms(poly: RhoPoly):
    """Terms converted from Taylor-coefficient to derivative-value variables.

    rho_ab (Taylor) = (d_u^a d_v^b rho)(0) / (a! b!), so each monomial picks
    up the inverse factorial product.  Returns a list of (sort_key, mono,
    Fraction coefficient) sorted by total degree, then lexicographically on
    the exponent vector read from the highest derivative variable down
    (this puts pure low-derivative monomials first, matching the customary
    way these formulas are printed).
    """
    converted = []
    max_idx = 0
    for mono, c in poly.terms():
        coeff = Fraction(c)
        indexed = []
        for (a, b), e in mono:
            coeff /= Fraction(factorial(a) * factorial(b)) ** e
            idx = _var_index(a, b)
            indexed.append((idx, (a, b), e))
            max_idx = max(max_idx, idx)
        indexed.sort()
        converted.append((indexed, coeff))
    keyed = []
    for indexed, coeff in converted:
        degree = sum(e for _, _, e in indexed)
        exps = {idx: e for idx, _, e in indexed}
        rev = tuple(exps.get(i, 0) for i in range(max_idx, -1, -1))
        keyed.append(((degree, rev), indexed, coeff))
    keyed.sort(key=lambda item: item[0])
    return [(mono, coeff) for _, mono, coeff in keyed]


def _content(coeffs):
    """Positive-leading rational content so residual coefficients are coprime ints."""
    from math import gcd, lcm
    num_gcd = 0
    den_lcm = 1
    for c in coeffs:
        num_gcd = gcd(num_gcd, abs(c.numerator))
        den_lcm = lcm(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    if coeffs and coeffs[0] < 0:
        content = -content
    return content


def _monomial_str(indexed, latex: bool) -> str:
    factors = []
    for _, (a, b), e in indexed:
        name = _var_name(a, b, latex)
        if e == 1:
            factors.append(name)
        else:
            factors.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    sep = " " if latex else "*"
    return sep.join(factors)


def render_closed_form(form: ClosedForm, fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps(closed_form_to_json(form), indent=None,
                          separators=(", ", ": "))
    latex = fmt == "latex"
    if fmt not in ("plain", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    terms = _derivative_value_terms(form.poly)
    if not terms:
        return "0"
    content = _content([c for _, c in terms])
    pieces = []
    for i, (indexed, coeff) in enumerate(terms):
        q = coeff / content
        assert q.denominator == 1
        mag, neg = abs(q.numerator), q.numerator < 0
        mono = _monomial_str(indexed, latex)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{' ' if latex else '*'}{mono}"
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    numerator = " ".join(pieces)
    sign = "-" if content < 0 else ""
    p, q_den = abs(content.numerator), content.denominator
    den_factors = []
    if q_den != 1:
        den_factors.append(str(q_den))
    if form.pi_power == 1:
        den_factors.append(r"\pi" if latex else "pi")
    elif form.pi_power > 1:
        den_factors.append((r"\pi^{%d}" % form.pi_power) if latex
                           else f"pi^{form.pi_power}")
    d = form.poly.den
    if d == 1:
        den_factors.append(_var_name(0, 0, latex))
    elif d > 1:
        den_factors.append((r"\rho^{%d}" % d) if latex
                           else f"rho^{d}")
    num_str = f"({numerator})" if not latex else numerator
    if p != 1:
        num_str = (f"{p} {num_str}" if latex else f"{p}*{num_str}")
    if not den_factors:
        return f"{sign}{num_str}"
    if latex:
        return rf"{sign}\frac{{{num_str}}}{{{' '.join(den_factors)}}}"
    return f"{sign}{num_str} / ({'*'.join(den_factors)})"


def closed_form_to_json(form: ClosedForm) -> dict:
    """Machine-readable closed form in derivative-value variables."""
    terms = []
    for indexed, coeff in _derivative_value_terms(form.poly):
        terms.append({
            "monomial": [[a, b, e] for _, (a, b), e in indexed],
            "coefficient": str(coeff),
        })
    return {
        "kind": "closedForm",
        "n": form.n,
        "piPower": form.pi_power,
        "rhoDenominatorPower": form.poly.den,
        "variables": "derivativeValues",
        "terms": terms,
    }


def parse_closed_form_json(doc) -> ClosedForm:
    """Inverse of closed_form_to_json; reconstructs the identical polynomial."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    num = {}
    for term in doc["terms"]:
        coeff = Fraction(term["coefficient"])
        mono = []
        for a, b, e in term["monomial"]:
            coeff *= Fraction(factorial(a) * factorial(b)) ** e
            mono.append(((a, b), e))
        mono = tuple(sorted(mono))
        num[mono] = num.get(mono, 0) + coeff
    poly = RhoPoly(num, doc["rhoDenominatorPower"])
    return ClosedForm(n=doc["n"], poly=poly, pi_power=doc["piPower"])


def render_pi_scaled(value: PiScaled, fmt: str = "plain") -> str:
    """Exact numeric rendering, e.g. 1/(12*pi); pi is never expanded."""
    if fmt == "json":
        return json.dumps({"kind": "numeric", "q": str(value.q),
                           "piPower": value.pi_power},
                          separators=(", ", ": "))
    if not value.q:
        return "0"
    p = value.q.numerator
    den_factors = []
    if value.q.denominator != 1:
        den_factors.append(str(value.q.denominator))
    if value.pi_power:
        if fmt == "latex":
            den_factors.append(r"\pi" if value.pi_power == 1
                               else r"\pi^{%d}" % value.pi_power)
        else:
            den_factors.append("pi" if value.pi_power == 1
                               else f"pi^{value.pi_power}")
    if not den_factors:
        return str(p)
    if fmt == "latex":
        sign = "-" if p < 0 else ""
        return rf"{sign}\frac{{{abs(p)}}}{{{' '.join(den_factors)}}}"
    den = den_factors[0] if len(den_factors) == 1 \
        else "(" + "*".join(den_factors) + ")"
    return f"{p}/{den}"
