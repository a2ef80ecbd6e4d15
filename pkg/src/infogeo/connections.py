"""Fisher pairing, exponential and mixture connections, geodesics.

Vector fields are sections ``q -> s(q)`` evaluated along explicit
curves; covariant derivatives are taken at ``gamma(t0)`` in the
direction of the curve's velocity.  Derivatives along curves come from
closed forms when the field or curve supplies them, and from central
differences with one Richardson step otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from infogeo.charts import partition_function
from infogeo.errors import DomainError, NumericalError
from infogeo.measure import (
    Density,
    TangentVector,
    center,
    expectation,
    same_space,
    values_of,
)

_EPS = np.finfo(np.float64).eps
#: Centring tolerance for vectors carrying differencing noise.
NUMERIC_TOL = 1e-6


def fd_step(t0: float, rate: float = 1.0) -> float:
    """Step balancing O(h^4) truncation against rounding for a function
    varying on the time scale ``1 / rate``."""
    rate = max(1.0, float(rate))
    return (12.0 * _EPS) ** 0.2 / rate * (1.0 + abs(t0))


def richardson_derivative(fn, t0: float, h: Optional[float] = None, rate: float = 1.0):
    """Central difference of ``fn`` at ``t0`` with one Richardson level.

    ``fn`` may return a scalar or an array.  ``rate`` is the inverse time
    scale of ``fn`` and shrinks the default step.  Raises
    :class:`NumericalError` when the step vanishes against ``t0`` or the
    sampled values are not finite.
    """
    h = fd_step(t0, rate) if h is None else h
    if not h > 0 or t0 + h == t0 or t0 + 0.5 * h == t0:
        raise NumericalError(f"finite-difference step {h!r} underflows at t = {t0!r}")
    fp, fm = np.asarray(fn(t0 + h)), np.asarray(fn(t0 - h))
    fp2, fm2 = np.asarray(fn(t0 + 0.5 * h)), np.asarray(fn(t0 - 0.5 * h))
    coarse = (fp - fm) / (2.0 * h)
    fine = (fp2 - fm2) / h
    out = (4.0 * fine - coarse) / 3.0
    if not np.all(np.isfinite(out)):
        raise NumericalError("non-finite values while differencing")
    return out


# --------------------------------------------------------------------------
# curves

class CurveKind(enum.Enum):
    EXP_SEGMENT = "exp"
    MIX_SEGMENT = "mix"
    CHART_LINE = "chart"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class Curve:
    """A smooth path of densities with optional closed-form log derivatives.

    ``dlog_fn(t)`` returns ``d/dt log gamma(t)`` and ``ddlog_fn(t)`` its
    second derivative, both per atom.  Missing ones are differenced.
    """

    gamma: Callable[[float], Density]
    kind: CurveKind = CurveKind.CUSTOM
    dlog_fn: Optional[Callable[[float], np.ndarray]] = None
    ddlog_fn: Optional[Callable[[float], np.ndarray]] = None
    domain: tuple = (0.0, 1.0)

    def __call__(self, t: float) -> Density:
        return self.gamma(float(t))

    @property
    def analytic(self) -> bool:
        return self.dlog_fn is not None

    @property
    def space(self):
        return self.gamma(self.domain[0]).space

    def dlog(self, t: float) -> np.ndarray:
        if self.dlog_fn is not None:
            return np.asarray(self.dlog_fn(float(t)), dtype=np.float64)
        return richardson_derivative(lambda s: np.log(self.gamma(s).vals), float(t))

    def ddlog(self, t: float) -> np.ndarray:
        if self.ddlog_fn is not None:
            return np.asarray(self.ddlog_fn(float(t)), dtype=np.float64)
        return richardson_derivative(self.dlog, float(t), rate=self.rate(t))

    def rate(self, t: float) -> float:
        """Speed ``max |d/dt log gamma|``; sets the differencing step along the curve."""
        if self.dlog_fn is None:
            return 1.0
        return max(1.0, float(np.max(np.abs(self.dlog(t)))))

    def samples(self, n: int = 101) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], n)


def exp_geodesic(p: Density, u, t: float) -> Density:
    """One-dimensional exponential model ``exp(t u) p / Z_p(t u)``."""
    u = values_of(u)
    expectation(p, u)
    a = t * u
    return Density.normalized(p.space, np.exp(a - a.max()) * p.vals)


def exp_segment(p: Density, u, domain=(0.0, 1.0)) -> Curve:
    """Exponential model through ``p`` with direction ``u``."""
    u = center(p, u) if not isinstance(u, TangentVector) else u
    uv = u.vals

    def gamma(t):
        return exp_geodesic(p, uv, t)

    def dlog(t):
        return uv - expectation(gamma(t), uv)

    def ddlog(t):
        q = gamma(t)
        d = uv - expectation(q, uv)
        return np.full(p.space.n, -float(q.masses @ (d * d)))

    return Curve(gamma, CurveKind.EXP_SEGMENT, dlog, ddlog, tuple(domain))


def chart_line(p: Density, u, v, domain=(0.0, 1.0)) -> Curve:
    """Straight line ``t -> e_p(u + t v)`` in the chart centred at ``p``."""
    u, v = values_of(u), values_of(v)
    expectation(p, u), expectation(p, v)

    def gamma(t):
        a = u + t * v
        return Density.normalized(p.space, np.exp(a - a.max()) * p.vals)

    def dlog(t):
        return v - expectation(gamma(t), v)

    def ddlog(t):
        q = gamma(t)
        d = v - expectation(q, v)
        return np.full(p.space.n, -float(q.masses @ (d * d)))

    return Curve(gamma, CurveKind.CHART_LINE, dlog, ddlog, tuple(domain))


def mix_segment(q1: Density, q2: Density, domain=(0.0, 1.0)) -> Curve:
    """Mixture line ``t q1 + (1 - t) q2``.

    Slightly outside ``[0, 1]`` the formula still gives positive
    densities, which lets the endpoints be differenced.
    """
    same_space(q1, q2)
    a, b = q1.vals, q2.vals
    diff = a - b

    def gamma(t):
        return Density(q1.space, t * a + (1.0 - t) * b)

    def dlog(t):
        return diff / (t * a + (1.0 - t) * b)

    def ddlog(t):
        r = diff / (t * a + (1.0 - t) * b)
        return -r * r

    return Curve(gamma, CurveKind.MIX_SEGMENT, dlog, ddlog, tuple(domain))


def custom_curve(gamma, dlog=None, ddlog=None, domain=(0.0, 1.0)) -> Curve:
    return Curve(gamma, CurveKind.CUSTOM, dlog, ddlog, tuple(domain))


# --------------------------------------------------------------------------
# vector fields

@dataclass(frozen=True, eq=False)
class VectorField:
    """A section assigning to each density ``q`` a ``q``-centred vector.

    ``derivative(curve, t)`` optionally returns ``d/dt s(gamma(t))`` in
    closed form.
    """

    fn: Callable[[Density], object]
    kind: str = "custom"
    derivative: Optional[Callable[[Curve, float], np.ndarray]] = None

    def __call__(self, q: Density) -> TangentVector:
        out = self.fn(q)
        if isinstance(out, TangentVector):
            return out
        return TangentVector(q, out)

    def along(self, c: Curve, t: float) -> TangentVector:
        return self(c(t))


def exp_parallel_field(m) -> VectorField:
    """``q -> m - E_q[m]``: constant under exponential transport."""
    m = np.array(values_of(m), dtype=np.float64)

    def deriv(c, t):
        q = c(t)
        dl = c.dlog(t)
        cov = float(q.masses @ ((m - expectation(q, m)) * dl))
        return np.full(m.shape, -cov)

    return VectorField(lambda q: center(q, m), "parallel-exp", deriv)


def mix_parallel_field(p0: Density, u0) -> VectorField:
    """``q -> (p0 / q) u0``: constant under mixture transport."""
    u0 = TangentVector(p0, values_of(u0)) if not isinstance(u0, TangentVector) else u0
    pu = p0.vals * u0.vals

    def deriv(c, t):
        return -(pu / c(t).vals) * c.dlog(t)

    return VectorField(lambda q: TangentVector(q, pu / q.vals), "parallel-mix", deriv)


def smooth_field(a, b) -> VectorField:
    """Generic smooth field ``q -> centre_q(a log q + b q)``; no closed-form derivative."""
    a = np.array(values_of(a), dtype=np.float64)
    b = np.array(values_of(b), dtype=np.float64)
    return VectorField(lambda q: center(q, a * np.log(q.vals) + b * q.vals), "custom")


@dataclass(frozen=True, eq=False)
class TangentField(VectorField):
    """Velocity field ``d/dt log(gamma(t) / p)`` of a curve, defined along it only."""

    curve: Optional[Curve] = None

    def __call__(self, q):
        raise DomainError("a curve's tangent field is only defined along that curve")

    def along(self, c, t):
        if c is not self.curve:
            raise DomainError("tangent field evaluated along a different curve")
        tol = 1e-12 if c.analytic else NUMERIC_TOL
        return TangentVector(c(t), c.dlog(t), tol=tol)


def curve_tangent_field(c: Curve) -> TangentField:
    # the derivative along the curve is differenced from dlog on purpose,
    # so geodesic checks do not rest on hand-written second derivatives
    return TangentField(fn=lambda q: None, kind="coordinate", curve=c)


# --------------------------------------------------------------------------
# metric and transports

def _as_tangent(p: Density, u) -> TangentVector:
    if isinstance(u, TangentVector):
        same_space(p, u)
        if u.base is not p and not np.array_equal(u.base.vals, p.vals):
            raise DomainError("vector is attached to a different base point")
        return u
    return TangentVector(p, u)


def fisher(p: Density, u, v) -> float:
    """Fisher scalar product ``E_p[u v]`` of two ``p``-centred vectors."""
    u, v = _as_tangent(p, u), _as_tangent(p, v)
    return float(p.masses @ (u.vals * v.vals))


def transport_exp(p: Density, q: Density, u) -> TangentVector:
    """Exponential parallel transport: subtract ``E_q[u]``."""
    u = _as_tangent(p, u)
    same_space(p, q)
    return center(q, u.vals)


def transport_mix(p: Density, q: Density, u) -> TangentVector:
    """Mixture parallel transport: multiply by the density ratio ``p / q``."""
    u = _as_tangent(p, u)
    same_space(p, q)
    return TangentVector(q, np.exp(np.log(p.vals) - np.log(q.vals)) * u.vals)


def duality_gap(p: Density, q: Density, u, v) -> float:
    """``<tau_exp u, tau_mix v>_q - <u, v>_p``; zero for dual transports."""
    u, v = _as_tangent(p, u), _as_tangent(p, v)
    return fisher(q, transport_exp(p, q, u), transport_mix(p, q, v)) - fisher(p, u, v)


# --------------------------------------------------------------------------
# covariant derivatives

def directional_derivative(s: VectorField, c: Curve, t0: float, analytic: bool = True):
    """``d/dt s(gamma(t))`` at ``t0``, per atom."""
    if analytic and s.derivative is not None:
        return np.asarray(s.derivative(c, float(t0)), dtype=np.float64)
    return richardson_derivative(lambda t: s.along(c, t).vals, float(t0), rate=c.rate(t0))


def nabla_exp(s: VectorField, c: Curve, t0: float, analytic: bool = True) -> TangentVector:
    """Exponential covariant derivative: the derivative recentred at ``gamma(t0)``."""
    d = directional_derivative(s, c, t0, analytic)
    return center(c(t0), d)


def nabla_mix(s: VectorField, c: Curve, t0: float, analytic: bool = True) -> TangentVector:
    """Mixture covariant derivative ``d_v s + s * d/dt log gamma``."""
    d = directional_derivative(s, c, t0, analytic)
    val = d + s.along(c, t0).vals * c.dlog(t0)
    return TangentVector(c(t0), val, tol=NUMERIC_TOL)


def covariant_derivative(kind, s: VectorField, c: Curve, t0: float) -> TangentVector:
    """Dispatch on ``"exp"``, ``"mix"`` or a numeric alpha in (-1, 1)."""
    if kind == "exp" or kind == 1:
        return nabla_exp(s, c, t0)
    if kind == "mix" or kind == -1:
        return nabla_mix(s, c, t0)
    from infogeo.alpha import AlphaParam, nabla_alpha

    a = kind if isinstance(kind, AlphaParam) else AlphaParam(float(kind))
    return nabla_alpha(a, s, c, t0)


def duality_product_gap(s1: VectorField, s2: VectorField, c: Curve, t0: float = 0.0) -> float:
    """Product-rule defect ``d<s1,s2> - <nabla_exp s1, s2> - <s1, nabla_mix s2>``."""
    lhs = richardson_derivative(
        lambda t: fisher(c(t), s1.along(c, t), s2.along(c, t)), t0, rate=c.rate(t0))
    p = c(t0)
    a = s1.along(c, t0).vals
    b = s2.along(c, t0).vals
    rhs = float(p.masses @ (nabla_exp(s1, c, t0).vals * b)) + float(
        p.masses @ (a * nabla_mix(s2, c, t0).vals))
    return float(lhs) - rhs


def geodesic_residual(c: Curve, kind="exp", ts=None, n: int = 101) -> float:
    """``sup_t |nabla_{gamma'} gamma'|_inf`` over sampled ``t``.

    Uses the tangent field ``d/dt log(gamma(t) / gamma(0))``.  ``kind`` is
    ``"exp"``, ``"mix"`` or a numeric alpha.
    """
    s = curve_tangent_field(c)
    ts = c.samples(n) if ts is None else np.asarray(ts, dtype=np.float64)
    worst = 0.0
    for t in ts:
        r = covariant_derivative(kind, s, c, float(t))
        worst = max(worst, float(np.max(np.abs(r.vals))))
    return worst


def geodesic_residuals(c: Curve, kind="exp", ts=None, n: int = 101) -> np.ndarray:
    """Per-sample residuals; see :func:`geodesic_residual`."""
    s = curve_tangent_field(c)
    ts = c.samples(n) if ts is None else np.asarray(ts, dtype=np.float64)
    return np.array([
        float(np.max(np.abs(covariant_derivative(kind, s, c, float(t)).vals))) for t in ts])


__all__ = [
    "Curve", "CurveKind", "VectorField", "TangentField",
    "exp_geodesic", "exp_segment", "mix_segment", "chart_line", "custom_curve",
    "exp_parallel_field", "mix_parallel_field", "smooth_field", "curve_tangent_field",
    "fisher", "transport_exp", "transport_mix", "duality_gap",
    "directional_derivative", "nabla_exp", "nabla_mix", "covariant_derivative",
    "duality_product_gap", "geodesic_residual", "geodesic_residuals",
    "richardson_derivative", "partition_function",
]
