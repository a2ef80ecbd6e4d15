"""Alpha-embeddings into L^r spheres and the alpha-connection.

With ``r = 2 / (1 - alpha)`` the embedding ``p -> r p^(1/r)`` lands on
the sphere of radius ``r`` in ``L^r(mu)``.  The alpha covariant
derivative pushes a vector field forward, differentiates it
componentwise (the trivial connection of ``L^r``), projects onto the
sphere's tangent space and pulls the result back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from infogeo.connections import (
    NUMERIC_TOL,
    Curve,
    VectorField,
    fisher,
    nabla_exp,
    nabla_mix,
    richardson_derivative,
)
from infogeo.errors import DomainError
from infogeo.measure import Density, TangentVector, center, values_of

#: Distance kept from the singular endpoints alpha = +-1.
GUARD_BAND = 1e-6


@dataclass(frozen=True)
class AlphaParam:
    alpha: float
    guard: float = GUARD_BAND

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or abs(a) > 1.0 - self.guard:
            raise DomainError(f"alpha={a!r} outside the guarded interval (-1, 1)")
        object.__setattr__(self, "alpha", a)

    @property
    def r(self) -> float:
        return 2.0 / (1.0 - self.alpha)

    @property
    def dual(self) -> "AlphaParam":
        return AlphaParam(-self.alpha, self.guard)


def _param(a) -> AlphaParam:
    return a if isinstance(a, AlphaParam) else AlphaParam(float(a))


def lr_norm(space, f, r: float) -> float:
    """``(int |f|^r dmu)^(1/r)``."""
    f = values_of(f)
    return float(space.w @ np.abs(f) ** r) ** (1.0 / r)


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """Image ``f = r p^(1/r)`` of a density, with its dual ``f* = sgn f |f|^(r-1)``."""

    param: AlphaParam
    space: object
    f: np.ndarray

    @property
    def star(self) -> np.ndarray:
        r = self.param.r
        return np.sign(self.f) * np.abs(self.f) ** (r - 1.0)

    @property
    def radius(self) -> float:
        return lr_norm(self.space, self.f, self.param.r)


def alpha_embed(a, p: Density) -> SpherePoint:
    """``(2 / (1 - alpha)) p^((1 - alpha) / 2)``."""
    a = _param(a)
    f = a.r * p.vals ** (1.0 / a.r)
    return SpherePoint(a, p.space, f)


def pushforward(a, p: Density, u) -> np.ndarray:
    """Differential of the embedding at ``p``: ``u -> p^(1/r) u``."""
    a = _param(a)
    u = u if isinstance(u, TangentVector) else TangentVector(p, u)
    return p.vals ** (1.0 / a.r) * u.vals


def pullback(a, p: Density, g, tol: float = NUMERIC_TOL) -> TangentVector:
    """Inverse of :func:`pushforward` on the sphere's tangent space.

    Divides by ``p^(1/r)`` and recentres to strip rounding; inputs that
    are not tangent to within ``tol`` are rejected.
    """
    a = _param(a)
    v = values_of(g) / p.vals ** (1.0 / a.r)
    mean = float(p.masses @ v)
    if abs(mean) > tol * max(1.0, float(np.max(np.abs(v)))):
        raise DomainError(f"vector is not tangent to the sphere (defect {mean:.3e})")
    return center(p, v)


def tangency_defect(a, p: Density, g) -> float:
    """``int g p^(1 - 1/r) dmu``; zero on the sphere's tangent space at ``r p^(1/r)``."""
    a = _param(a)
    return float(p.space.w @ (values_of(g) * p.vals ** (1.0 - 1.0 / a.r)))


def sphere_project(a, p: Density, g) -> np.ndarray:
    """Projection ``g - (int g p^(1-1/r) dmu) p^(1/r)`` onto the tangent space."""
    a = _param(a)
    g = values_of(g)
    return g - tangency_defect(a, p, g) * p.vals ** (1.0 / a.r)


def sphere_project_general(point: SpherePoint, g) -> np.ndarray:
    """Projection at an arbitrary sphere point: ``g - (r^-r int g f* dmu) f``."""
    r = point.param.r
    g = values_of(g)
    coeff = r ** (-r) * float(point.space.w @ (g * point.star))
    return g - coeff * point.f


def nabla_alpha(a, s: VectorField, c: Curve, t0: float) -> TangentVector:
    """Alpha covariant derivative of ``s`` along ``c`` at ``t0``.

    The pushed-forward field ``gamma(t)^(1/r) s(gamma(t))`` is always
    differenced numerically, independently of any closed forms the field
    may carry.
    """
    a = _param(a)
    inv_r = 1.0 / a.r
    p = c(t0)

    def pushed(t):
        return c(t).vals ** inv_r * s.along(c, t).vals

    g = richardson_derivative(pushed, float(t0), rate=c.rate(t0))
    return pullback(a, p, sphere_project(a, p, g))


def convex_combination(a, s: VectorField, c: Curve, t0: float) -> np.ndarray:
    """``(1+alpha)/2 nabla_exp + (1-alpha)/2 nabla_mix`` as atom values."""
    a = _param(a)
    e = nabla_exp(s, c, t0).vals
    m = nabla_mix(s, c, t0).vals
    return 0.5 * (1.0 + a.alpha) * e + 0.5 * (1.0 - a.alpha) * m


def convex_combination_gap(a, s: VectorField, c: Curve, t0: float) -> float:
    """Sup-norm distance between the alpha derivative and the convex mixture."""
    return float(np.max(np.abs(nabla_alpha(a, s, c, t0).vals - convex_combination(a, s, c, t0))))


def alpha_duality_gap(a, s1: VectorField, s2: VectorField, c: Curve, t0: float = 0.0) -> float:
    """Product-rule defect for the pair (alpha, -alpha) along ``c`` at ``t0``.

    ``d/dt <s1, s2>_gamma(t) - <nabla^alpha s1, s2> - <s1, nabla^-alpha s2>``.
    """
    a = _param(a)
    lhs = richardson_derivative(
        lambda t: fisher(c(t), s1.along(c, t), s2.along(c, t)), float(t0), rate=c.rate(t0))
    p = c(t0)
    v1 = s1.along(c, t0)
    v2 = s2.along(c, t0)
    d1 = nabla_alpha(a, s1, c, t0)
    d2 = nabla_alpha(a.dual, s2, c, t0)
    rhs = float(p.masses @ (d1.vals * v2.vals)) + float(p.masses @ (v1.vals * d2.vals))
    return float(lhs) - rhs
