"""Laplacians of conformally flat 2-D metrics acting on jets.

For the metric rho(u, v) (du^2 + dv^2) the (nonnegative) Laplace operator is

    Delta f = -(1/rho) (f_uu + f_vv),

and its freezing at the origin replaces 1/rho by the constant 1/rho(0, 0).
Both act on Jet2D values over any exact coefficient ring and lower the jet
order by two per application.

The reciprocal 1/rho is expensive for a fully generic conformal factor, but
the pipelines here never need it far: applying Delta repeatedly to a monomial
keeps the band order - valuation of every intermediate jet bounded, so the
product (1/rho) * (f_uu + f_vv) only consumes the reciprocal up to degree
order(result) - valuation(f_uu + f_vv).  ``ConformalLaplacian`` therefore
computes the reciprocal lazily, Newton step by Newton step, and caches the
longest prefix obtained so far.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OrderExhausted
from .jets import Jet2D, invert_coefficient


class ConformalLaplacian:
    """Delta f = -(1/rho)(f_uu + f_vv) with a lazily extended 1/rho jet."""

    def __init__(self, rho: Jet2D):
        self.rho = rho
        invert_coefficient(rho.constant_term())  # fail fast if degenerate
        self._inv = None  # longest reciprocal prefix computed so far

    def inverse_factor(self, order: int) -> Jet2D:
        """The jet of 1/rho trusted to `order`, extending the cache as needed."""
        if order > self.rho.order:
            raise OrderExhausted(
                f"need 1/rho to degree {order} but the conformal factor jet "
                f"has order {self.rho.order}")
        x = self._inv
        if x is None:
            x = Jet2D.constant(invert_coefficient(self.rho.constant_term()), 0)
        while x.order < order:
            m = min(2 * x.order + 1, order)
            rho_m = self.rho.truncate(m)
            correction = Jet2D.constant(2, m) - rho_m._mul_capped(x, m)
            x = x._mul_capped(correction, m)
        if self._inv is None or x.order > self._inv.order:
            self._inv = x
        return x if x.order == order else x.truncate(order)

    def apply(self, f: Jet2D) -> Jet2D:
        s = f.diff(2, 0) + f.diff(0, 2)
        out_order = s.order
        need = out_order - s.valuation()
        if need < 0:
            return Jet2D.zero(out_order)
        inv = self.inverse_factor(need)
        return -(inv * s)

    def apply_power(self, f: Jet2D, k: int) -> Jet2D:
        for _ in range(k):
            f = self.apply(f)
        return f


class FrozenLaplacian:
    """Delta_0 f = -(1/rho(0,0))(f_uu + f_vv), the origin-frozen operator."""

    def __init__(self, rho: Jet2D):
        self.inv0 = invert_coefficient(rho.constant_term())

    def apply(self, f: Jet2D) -> Jet2D:
        s = f.diff(2, 0) + f.diff(0, 2)
        return s * (-self.inv0)

    def apply_power(self, f: Jet2D, k: int) -> Jet2D:
        for _ in range(k):
            f = self.apply(f)
        return f


def gaussian_curvature_jet(rho: Jet2D) -> Jet2D:
    """Jet of the Gaussian curvature K = (1/2) Delta log rho; order drops by 2."""
    lap = ConformalLaplacian(rho)
    return lap.apply(rho.log_nonconstant()) * Fraction(1, 2)
