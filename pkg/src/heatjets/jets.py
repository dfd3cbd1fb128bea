"""Truncated bivariate Taylor expansions with exact coefficients.

A ``Jet2D`` of order N represents a function of (u, v) near the origin known
modulo O(|(u, v)|^(N+1)): coefficients are stored sparsely for total degree
a + b <= N and every higher coefficient is unknown, not zero.  Coefficients
may be ``int``/``Fraction`` (concrete metrics) or ``RhoPoly`` (the generic
conformal factor); the element type never mixes within one pipeline.

Order bookkeeping is valuation-aware.  If f is trusted to order N with lowest
nonzero total degree vf, and g to order M with valuation vg, then the unknown
tails contribute f*err_g = O(vf + M + 1) and g*err_f = O(vg + N + 1), so

    order(f * g) = min(N + vg, M + vf).

This is what keeps deep Laplacian pipelines cheap: repeatedly applying a
second-order operator to a high-degree monomial yields jets whose band
(order - valuation) stays bounded, so inverse conformal factors are only ever
needed to small degree.  Addition trusts only min(N, M); differentiation by
(i, j) lowers the order by i + j.

The empty jet of order N is the function that vanishes to order N; its
valuation is reported as N + 1 (the first unknown degree).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOutOfRange, NonInvertibleConstantTerm, OrderExhausted
from .rhopoly import RhoPoly


def invert_coefficient(c):
    """Reciprocal of an exact coefficient (Fraction, int, or RhoPoly)."""
    if isinstance(c, RhoPoly):
        return c.inverse()
    if isinstance(c, (int, Fraction)):
        if not c:
            raise NonInvertibleConstantTerm("zero constant term")
        return Fraction(1, 1) / c
    raise TypeError(f"cannot invert coefficient of type {type(c).__name__}")


class Jet2D:
    """Sparse exact 2-D jet: dict {(a, b): coeff} with a + b <= order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order, _canonical=False):
        if order < 0:
            raise ValueError("jet order must be nonnegative")
        if _canonical:
            self.coeffs = coeffs
        else:
            self.coeffs = {k: c for k, c in coeffs.items()
                           if c and k[0] + k[1] <= order}
        self.order = order

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, order):
        if not value:
            return cls({}, order, _canonical=True)
        return cls({(0, 0): value}, order, _canonical=True)

    @classmethod
    def monomial(cls, a, b, order, coeff=1):
        if a + b > order:
            raise IndexOutOfRange(
                f"monomial u^{a} v^{b} exceeds jet order {order}")
        if not coeff:
            return cls({}, order, _canonical=True)
        return cls({(a, b): coeff}, order, _canonical=True)

    @classmethod
    def zero(cls, order):
        return cls({}, order, _canonical=True)

    # -- inspection --------------------------------------------------------

    def valuation(self):
        """Lowest total degree with a nonzero coefficient, order+1 if none."""
        if not self.coeffs:
            return self.order + 1
        return min(a + b for a, b in self.coeffs)

    def coefficient(self, a, b):
        if a + b > self.order:
            raise IndexOutOfRange(
                f"coefficient ({a},{b}) beyond tracked order {self.order}")
        return self.coeffs.get((a, b), 0)

    def constant_term(self):
        return self.coeffs.get((0, 0), 0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Jet2D):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return f"Jet2D(0; order={self.order})"
        parts = [f"{c}*u^{a}v^{b}"
                 for (a, b), c in sorted(self.coeffs.items())]
        return f"Jet2D({' + '.join(parts)}; order={self.order})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet2D):
            return NotImplemented
        order = min(self.order, other.order)
        out = {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order}
        for k, c in other.coeffs.items():
            if k[0] + k[1] > order:
                continue
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Jet2D(out, order, _canonical=True)

    def __neg__(self):
        return Jet2D({k: -c for k, c in self.coeffs.items()}, self.order,
                     _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, Jet2D):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Jet2D):
            order = min(self.order + other.valuation(),
                        other.order + self.valuation())
            return self._mul_capped(other, order)
        # scalar from the coefficient ring
        if not other:
            return Jet2D.zero(self.order)
        return Jet2D({k: c * other for k, c in self.coeffs.items()},
                     self.order, _canonical=True)

    __rmul__ = __mul__

    def _mul_capped(self, other, cap):
        """Product keeping only total degree <= cap, trusted to order cap."""
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a + b > cap:
                    continue
                prod = c1 * c2
                prev = out.get((a, b))
                if prev is None:
                    out[(a, b)] = prod
                else:
                    s = prev + prod
                    if s:
                        out[(a, b)] = s
                    else:
                        del out[(a, b)]
        return Jet2D(out, cap, _canonical=True)

    def __pow__(self, exp):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("jet powers must be nonnegative integers")
        if exp == 0:
            return Jet2D.constant(1, self.order)
        result = self
        for _ in range(exp - 1):
            result = result * self
        return result

    # -- calculus ----------------------------------------------------------

    def diff(self, du=0, dv=0):
        """Partial derivative d^(du+dv) / du^du dv^dv; order drops by du+dv."""
        order = self.order - du - dv
        if order < 0:
            raise OrderExhausted(
                f"derivative of total order {du + dv} exhausts jet order "
                f"{self.order}")
        if du == 0 and dv == 0:
            return self
        out = {}
        for (a, b), c in self.coeffs.items():
            if a < du or b < dv:
                continue
            factor = 1
            for i in range(du):
                factor *= a - i
            for j in range(dv):
                factor *= b - j
            out[(a - du, b - dv)] = c * factor
        return Jet2D(out, order, _canonical=True)

    def truncate(self, order):
        """Forget terms above `order`; cannot exceed the tracked order."""
        if order > self.order:
            raise ValueError(
                f"cannot extend jet of order {self.order} to {order}")
        if order == self.order:
            return self
        out = {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order}
        return Jet2D(out, order, _canonical=True)

    def inverse(self, order=None):
        """Multiplicative inverse by Newton iteration x <- x(2 - f x).

        Each step doubles the trusted order; requires an invertible constant
        term.  `order` defaults to the jet's own order.
        """
        if order is None:
            order = self.order
        if order > self.order:
            raise OrderExhausted(
                f"inverse to order {order} needs jet order >= {order}, "
                f"have {self.order}")
        c0 = self.constant_term()
        inv0 = invert_coefficient(c0)
        x = Jet2D.constant(inv0, 0)
        m = 0
        two = Jet2D.constant(2, order)
        while m < order:
            m = min(2 * m + 1, order)
            fm = self.truncate(m)
            fx = fm._mul_capped(x, m)
            x = x._mul_capped(two - fx, m)
        return x

    def log_nonconstant(self):
        """log(f) minus its (transcendental) value at the origin.

        Computed as log(1 + w) with w = f/f0 - 1 via the alternating series
        sum (-1)^(i+1) w^i / i; the dropped constant log(f0) never survives
        differentiation, which is all downstream users need.
        """
        n = self.order
        c0 = self.constant_term()
        inv0 = invert_coefficient(c0)
        w = self * inv0 - Jet2D.constant(1, n)
        if w.valuation() < 1:
            raise NonInvertibleConstantTerm(
                "logarithm requires an invertible constant term")
        acc = w
        w_pow = w
        for i in range(2, n + 1):
            w_pow = w_pow._mul_capped(w, n)
            if not w_pow:
                break
            acc = acc + w_pow * Fraction((-1) ** (i + 1), i)
        return acc

    def compose_linear(self, m00, m01, m10, m11):
        """Substitute u -> m00 u + m01 v, v -> m10 u + m11 v (exact entries)."""
        n = self.order
        # powers of the two substituted linear forms, as jets
        lin_u = Jet2D({(1, 0): m00, (0, 1): m01}, n)
        lin_v = Jet2D({(1, 0): m10, (0, 1): m11}, n)
        pow_u = [Jet2D.constant(1, n)]
        pow_v = [Jet2D.constant(1, n)]
        for _ in range(n):
            pow_u.append(pow_u[-1]._mul_capped(lin_u, n))
            pow_v.append(pow_v[-1]._mul_capped(lin_v, n))
        parts = Jet2D.zero(n)
        for (a, b), c in self.coeffs.items():
            parts = parts + pow_u[a]._mul_capped(pow_v[b], n) * c
        return parts
