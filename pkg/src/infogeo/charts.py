"""Exponential charts, their transition maps and convex mixtures.

A chart centred at ``p`` sends a ``p``-centred random variable ``u`` in
the open unit ball of the ``PHI1`` Orlicz norm to the density
``exp(u) p / Z_p(u)``.  On a finite space the formula makes sense for
every ``u``; the ball is enforced anyway so that the atlas matches the
one built on the full exponential Orlicz space.  Pass ``ball=None`` to
switch the check off, or ``ball="luxemburg"`` to use the gauge norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from infogeo.errors import ChartDomainError, DomainError
from infogeo.measure import Density, TangentVector, center, same_space, values_of
from infogeo.orlicz import PHI1, luxemburg_norm, orlicz_norm

_BALL_NORMS = {"orlicz": orlicz_norm, "luxemburg": luxemburg_norm}


def chart_norm(p: Density, u, ball: str = "orlicz") -> float:
    """Norm defining the chart domain at ``p``."""
    try:
        norm = _BALL_NORMS[ball]
    except KeyError:
        raise DomainError(f"unknown chart ball {ball!r}") from None
    return norm(PHI1, p, u)


def partition_function(p: Density, u) -> float:
    """Moment generating functional ``Z_p(u) = E_p[exp(u)]``."""
    u = values_of(u)
    if u.shape != (p.space.n,) or not np.all(np.isfinite(u)):
        raise DomainError("partition function needs a finite vector on the atoms of p")
    if u.max() > 700.0:
        return math.inf
    return float(p.masses @ np.exp(u))


def _check_base(p: Density, u):
    if isinstance(u, TangentVector):
        same_space(p, u)
        if u.base is not p and not np.array_equal(u.base.vals, p.vals):
            raise DomainError("chart coordinate is centred at a different base point")
        return u
    return TangentVector(p, u)


def chart_forward(p: Density, u, ball: str | None = "orlicz") -> Density:
    """Map a chart coordinate at ``p`` to its density."""
    u = _check_base(p, u)
    if ball is not None:
        norm = chart_norm(p, u, ball)
        if not norm < 1.0:
            raise ChartDomainError(f"coordinate has {ball} norm {norm:.6g} >= 1")
    a = u.vals - u.vals.max()
    return Density.normalized(p.space, np.exp(a) * p.vals)


def chart_inverse(p: Density, q: Density) -> TangentVector:
    """Centred log-likelihood ratio ``log(q/p) - E_p[log(q/p)]``.

    Never fails on a finite space; use :func:`in_chart_domain` to learn
    whether ``q`` lies in the chart's image.
    """
    same_space(p, q)
    return center(p, np.log(q.vals) - np.log(p.vals))


def in_chart_domain(p: Density, q: Density, ball: str = "orlicz") -> bool:
    return chart_norm(p, chart_inverse(p, q), ball) < 1.0


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """A coordinate ``u`` in the open unit ball of the chart centred at ``base``."""

    base: Density
    u: TangentVector
    ball: str = "orlicz"

    def __post_init__(self):
        u = _check_base(self.base, self.u)
        object.__setattr__(self, "u", u)
        norm = chart_norm(self.base, u, self.ball)
        if not norm < 1.0:
            raise ChartDomainError(f"coordinate has {self.ball} norm {norm:.6g} >= 1")

    @property
    def density(self) -> Density:
        return chart_forward(self.base, self.u, ball=None)


@dataclass(frozen=True, eq=False)
class Transition:
    """Change of coordinates from the chart at ``p1`` to the chart at ``p2``."""

    p1: Density
    p2: Density

    def __post_init__(self):
        same_space(self.p1, self.p2)

    def __call__(self, u) -> TangentVector:
        u = _check_base(self.p1, u)
        return center(self.p2, u.vals + (np.log(self.p1.vals) - np.log(self.p2.vals)))


def transition_map(p1: Density, p2: Density, u) -> TangentVector:
    """``e_{p2}^{-1} o e_{p1}`` in closed form: recentre ``u + log(p1/p2)`` at ``p2``."""
    return Transition(p1, p2)(u)


def mixture_point(q1: Density, q2: Density, t: float) -> Density:
    """Convex mixture ``t q1 + (1 - t) q2``."""
    same_space(q1, q2)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"mixture weight {t!r} outside [0, 1]")
    if t == 1.0:
        return q1
    if t == 0.0:
        return q2
    return Density.normalized(q1.space, t * q1.vals + (1.0 - t) * q2.vals)
