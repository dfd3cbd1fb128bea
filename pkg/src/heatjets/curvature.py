"""Curvature coordinates and the invariant form of the heat coefficients.

Near a point where the map (K, Delta K) built from the Gaussian curvature
has nonvanishing Jacobian, the shifted functions z = K - K(0) and
w = Delta K - (Delta K)(0) serve as coordinates, and the frozen Laplacian
is encoded by three scalars at the point:

    2E = -Delta(z^2),   2F = -Delta(z w),   2G = -Delta(w^2),

equivalently E = |grad K|^2 / rho, F = <grad K, grad Delta K> / rho,
G = |grad Delta K|^2 / rho at the origin.  The heat coefficients then take
a coordinate-free shape: the same constants as the direct path, with each
monomial image replaced by

    (-1)^p C(2s, p) E^(n-k+p) F^(2s-p) (EG - F^2)^(-s)
        * Delta^k(z^(2k-2n-p) w^p) |_origin.

Negative E powers live in the rational fraction field, so this path applies
to concrete rational jets only.  Degeneracy (vanishing Jacobian: constant
curvature, flat metrics, curvatures functionally dependent on one variable)
is detected exactly and reported as an error, never silently worked around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (DegenerateCurvatureCoordinates, OrderExhausted,
                     SingularFrame)
from .heatinv import HeatInvariantResult, heat_constant
from .jets import Jet2D
from .laplace import ConformalLaplacian, gaussian_curvature_jet
from .rhopoly import PiScaled, RhoPoly

FRAME_MIN_ORDER = 8


@dataclass(frozen=True)
class CurvatureFrame:
    """Pointwise curvature data: K, Delta K, the E/F/G scalars, degeneracy."""
    k0: Fraction
    dk0: Fraction
    e: Fraction
    f: Fraction
    g: Fraction
    jacobian: Fraction
    degenerate: bool


def _curvature_jets(rho: Jet2D):
    """(K jet, Delta K jet, shifted z and w jets) for a concrete metric."""
    lap = ConformalLaplacian(rho)
    k = gaussian_curvature_jet(rho)
    dk = lap.apply(k)
    k0 = Fraction(k.constant_term())
    dk0 = Fraction(dk.constant_term())
    z = k - Jet2D.constant(k0, k.order)
    w = dk - Jet2D.constant(dk0, dk.order)
    return lap, k, dk, k0, dk0, z, w


def curvature_frame(rho: Jet2D) -> CurvatureFrame:
    """E, F, G and the degeneracy predicate, all exact, at the origin."""
    if isinstance(rho.constant_term(), RhoPoly):
        raise TypeError("curvature frames are defined for concrete jets only")
    if rho.order < FRAME_MIN_ORDER:
        raise OrderExhausted(
            f"curvature frame needs a jet of order >= {FRAME_MIN_ORDER}, "
            f"got {rho.order}")
    lap, k, dk, k0, dk0, z, w = _curvature_jets(rho)
    e = -Fraction(lap.apply(z * z).constant_term()) / 2
    f = -Fraction(lap.apply(z * w).constant_term()) / 2
    g = -Fraction(lap.apply(w * w).constant_term()) / 2
    jac = (Fraction(k.coefficient(1, 0)) * Fraction(dk.coefficient(0, 1))
           - Fraction(k.coefficient(0, 1)) * Fraction(dk.coefficient(1, 0)))
    return CurvatureFrame(k0=k0, dk0=dk0, e=e, f=f, g=g, jacobian=jac,
                          degenerate=jac == 0)


def frame_via_identities(rho: Jet2D):
    """(E, F, G) recomputed from the expanded product-rule identities.

    2E = 2 K DK - Delta(K^2), 2F = K D^2K + (DK)^2 - Delta(K DK),
    2G = 2 DK D^2K - Delta((DK)^2), all at the origin; used to verify the
    defining route term by term.
    """
    lap, k, dk, k0, dk0, _, _ = _curvature_jets(rho)
    d2k0 = Fraction(lap.apply(dk).constant_term())
    e = (2 * k0 * dk0 - Fraction(lap.apply(k * k).constant_term())) / 2
    f = (k0 * d2k0 + dk0 ** 2
         - Fraction(lap.apply(k * dk).constant_term())) / 2
    g = (2 * dk0 * d2k0
         - Fraction(lap.apply(dk * dk).constant_term())) / 2
    return e, f, g


def frame_conformal_factor(frame: CurvatureFrame) -> Fraction:
    """Conformal factor 1/(E(EG - F^2)) of the curvature-coordinate chart."""
    denom = frame.e * (frame.e * frame.g - frame.f ** 2)
    if not denom:
        raise SingularFrame("E (EG - F^2) vanishes at the point")
    return 1 / denom


def heat_invariant_curvature_form(n: int, rho: Jet2D) -> HeatInvariantResult:
    """a_n(origin) evaluated through curvature coordinates.

    Exactly equals the direct conformal-path value whenever the coordinates
    exist; raises DegenerateCurvatureCoordinates or SingularFrame otherwise.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    required = 8 * n + 6
    if rho.order < required:
        raise OrderExhausted(
            f"curvature-form a_{n} needs a jet of order >= {required}, "
            f"got {rho.order}")
    frame = curvature_frame(rho)
    if frame.degenerate:
        raise DegenerateCurvatureCoordinates(
            "the (K, Delta K) Jacobian vanishes at the origin")
    disc = frame.e * frame.g - frame.f ** 2
    if not frame.e or not disc:
        raise SingularFrame("E = 0 or EG - F^2 = 0 at the origin")
    lap, _, _, _, _, z, w = _curvature_jets(rho)
    total = Fraction(0)
    for k in range(n + 1, 4 * n + 1):
        weights = []
        for s in range(k - n + 1):
            q = Fraction(0)
            for m in range(k, 4 * n + 1):
                q += heat_constant(n, k, s, m).q
            weights.append(q)
        if not any(weights):
            continue
        # Delta^k only consumes jets to order 2k, so all powers are built
        # with products capped there; z and w have valuation >= 1, keeping
        # every intermediate trusted far enough.
        cap = 2 * k
        zt = z.truncate(min(z.order, cap))
        wt = w.truncate(min(w.order, cap))
        one = Jet2D.constant(Fraction(1), cap)
        zpow, wpow = [one], [one]
        for _ in range(2 * k - 2 * n):
            zpow.append(zpow[-1]._mul_capped(zt, cap))
        for _ in range(2 * (k - n)):
            wpow.append(wpow[-1]._mul_capped(wt, cap))
        images = []
        for p in range(2 * (k - n) + 1):
            jet = zpow[2 * k - 2 * n - p]._mul_capped(wpow[p], cap)
            images.append(Fraction(lap.apply_power(jet, k).constant_term()))
        for s in range(k - n + 1):
            if not weights[s]:
                continue
            for p in range(2 * s + 1):
                if not images[p]:
                    continue
                factor = (frame.e ** (n - k + p) * frame.f ** (2 * s - p)
                          / disc ** s)
                total += ((-1) ** p * comb(2 * s, p)) * weights[s] \
                    * factor * images[p]
    return HeatInvariantResult(n=n, form=PiScaled(total, 1),
                               truncation_order=rho.order, path="curvature")
