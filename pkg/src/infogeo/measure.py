"""Finite atomic measure spaces, densities and centred random variables.

Every object here is immutable: the underlying arrays are flagged
read-only on construction, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from infogeo.errors import DomainError

#: Absolute tolerance for normalisation and centring checks.
CENTER_TOL = 1e-12
#: Inputs whose mass is off by at most this much are silently renormalised.
RENORM_TOL = 1e-9
#: Smallest admissible density value on any atom.
POSITIVITY_FLOOR = 1e-300


def _as_vector(values, n=None, name="values"):
    arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    if n is not None and arr.shape[0] != n:
        raise DomainError(f"{name} has {arr.shape[0]} entries, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """A finite set of atoms carrying strictly positive masses."""

    w: np.ndarray

    def __post_init__(self):
        w = _as_vector(self.w, name="weights")
        if w.size == 0:
            raise DomainError("a measure space needs at least one atom")
        if np.any(w <= 0.0):
            raise DomainError("atom weights must be strictly positive")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def total_mass(self) -> float:
        return float(self.w.sum())

    @classmethod
    def uniform(cls, n: int) -> "MeasureSpace":
        """Probability space with ``n`` equally weighted atoms."""
        return cls(np.full(n, 1.0 / n))

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class Density:
    """A strictly positive probability density with respect to ``space``.

    Values whose total mass is within ``RENORM_TOL`` of one are rescaled
    to exact normalisation; anything further away is rejected.  Use
    :meth:`normalized` to build a density from an arbitrary positive
    vector.
    """

    space: MeasureSpace
    vals: np.ndarray

    def __post_init__(self):
        vals = np.array(_as_vector(self.vals, self.space.n, "density"))
        if np.any(vals <= POSITIVITY_FLOOR):
            raise DomainError("density values must be strictly positive")
        mass = float(self.space.w @ vals)
        if abs(mass - 1.0) > RENORM_TOL:
            raise DomainError(f"density has total mass {mass!r}, expected 1")
        if mass != 1.0:
            vals /= mass
        vals.flags.writeable = False
        object.__setattr__(self, "vals", vals)

    @classmethod
    def normalized(cls, space: MeasureSpace, vals) -> "Density":
        """Rescale a positive vector so that it integrates to one."""
        v = np.asarray(vals, dtype=np.float64)
        if not np.all(np.isfinite(v)) or np.any(v <= 0.0):
            raise DomainError("cannot normalise a non-positive vector")
        return cls(space, v / float(space.w @ v))

    @classmethod
    def uniform(cls, space: MeasureSpace) -> "Density":
        return cls.normalized(space, np.ones(space.n))

    @property
    def masses(self) -> np.ndarray:
        """Probability of each atom, ``w_i * p_i``."""
        return self.space.w * self.vals

    @property
    def log(self) -> np.ndarray:
        return np.log(self.vals)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A random variable centred at ``base``; an element of the tangent space.

    The centring check is absolute up to values of order one and
    relative beyond, ``|E_p[u]| <= tol * max(1, max|u|)``.  Callers that
    produce vectors carrying numerical differentiation noise pass a
    looser ``tol``.
    """

    base: Density
    vals: np.ndarray
    tol: float = field(default=CENTER_TOL, repr=False, compare=False)

    def __post_init__(self):
        vals = _as_vector(self.vals, self.base.space.n, "tangent vector")
        scale = max(1.0, float(np.max(np.abs(vals))))
        mean = float(self.base.masses @ vals)
        if abs(mean) > self.tol * scale:
            raise DomainError(f"vector is not centred at its base (mean {mean:.3e})")
        object.__setattr__(self, "vals", vals)

    @property
    def space(self) -> MeasureSpace:
        return self.base.space

    def __neg__(self):
        return TangentVector(self.base, -self.vals)

    def __add__(self, other):
        _same_base(self.base, other.base)
        return TangentVector(self.base, self.vals + other.vals)

    def __sub__(self, other):
        _same_base(self.base, other.base)
        return TangentVector(self.base, self.vals - other.vals)

    def __mul__(self, c):
        return TangentVector(self.base, float(c) * self.vals)

    __rmul__ = __mul__


def _same_base(p: Density, q: Density):
    if p is q:
        return
    if p.space is not q.space and not np.array_equal(p.space.w, q.space.w):
        raise DomainError("densities live on different measure spaces")
    if not np.array_equal(p.vals, q.vals):
        raise DomainError("tangent vectors are attached to different base points")


def same_space(*objs):
    """Raise unless all densities/vectors share one measure space."""
    spaces = [o.space for o in objs]
    first = spaces[0]
    for s in spaces[1:]:
        if s is not first and not np.array_equal(s.w, first.w):
            raise DomainError("objects live on different measure spaces")


def values_of(f) -> np.ndarray:
    """Atom values of a tangent vector, density or plain array."""
    if isinstance(f, (TangentVector, Density)):
        return f.vals
    return np.asarray(f, dtype=np.float64)


def integrate(space: MeasureSpace, f) -> float:
    """Integral of ``f`` against the atom weights."""
    f = values_of(f)
    if f.shape != (space.n,):
        raise DomainError(f"function has shape {f.shape}, expected ({space.n},)")
    if not np.all(np.isfinite(f)):
        raise DomainError("cannot integrate a non-finite function")
    return float(space.w @ f)


def expectation(p: Density, f) -> float:
    """Expected value of ``f`` under the probability ``p dmu``."""
    f = values_of(f)
    if f.shape != (p.space.n,):
        raise DomainError(f"function has shape {f.shape}, expected ({p.space.n},)")
    if not np.all(np.isfinite(f)):
        raise DomainError("cannot take the expectation of a non-finite function")
    return float(p.masses @ f)


def center(p: Density, f) -> TangentVector:
    """Project ``f`` onto the random variables with zero mean under ``p``."""
    f = values_of(f)
    g = f - expectation(p, f)
    # one correction pass removes the residual rounding of the first mean
    g = g - float(p.masses @ g)
    return TangentVector(p, g)


def variance(p: Density, f) -> float:
    """Two-pass variance of ``f`` under ``p``."""
    f = values_of(f)
    d = f - expectation(p, f)
    return float(p.masses @ (d * d))
