"""Young functions and Orlicz-space norms on a finite probability space.

All integrals are taken against ``p dmu`` for a base density ``p``, so
the norms below are the base-point norms used by the exponential charts.

The three concrete Young functions are

* ``PHI1``: ``cosh x - 1``
* ``PHI2``: ``exp|x| - |x| - 1``
* ``PHI3``: ``(1 + |x|) log(1 + |x|) - |x|``

``PHI2`` and ``PHI3`` are complementary; ``PHI1`` is equivalent to
``PHI2`` and its exact complement ``y asinh y - sqrt(1 + y^2) + 1`` is
exposed through :func:`complementary_value`.
"""

from __future__ import annotations

import enum

import numpy as np

from infogeo._backend import kernels
from infogeo._fallback import _young_array
from infogeo.errors import DomainError
from infogeo.measure import Density, values_of


class YoungFunction(enum.Enum):
    PHI1 = 1
    PHI2 = 2
    PHI3 = 3

    def __call__(self, x):
        """Evaluate on a scalar or array; saturates to ``inf`` past ``|x| = 700``."""
        if np.ndim(x) == 0:
            return kernels.young_value(self.value, float(x))
        return _evaluate(self.value, np.asarray(x, dtype=np.float64))

    @property
    def conjugate(self) -> "YoungFunction":
        """The complementary function, up to equivalence for ``PHI1``."""
        return {1: YoungFunction.PHI3, 2: YoungFunction.PHI3, 3: YoungFunction.PHI2}[self.value]

    @property
    def exact_conjugate(self) -> bool:
        return self is not YoungFunction.PHI1

    @property
    def delta2(self) -> bool:
        return self is YoungFunction.PHI3

    @classmethod
    def parse(cls, name) -> "YoungFunction":
        key = str(name).strip().lower().removeprefix("phi")
        try:
            return cls(int(key))
        except (ValueError, KeyError):
            raise DomainError(f"unknown Young function {name!r}") from None


PHI1 = YoungFunction.PHI1
PHI2 = YoungFunction.PHI2
PHI3 = YoungFunction.PHI3


def _evaluate(kind, x):
    return _young_array(kind, x.reshape(-1)).reshape(x.shape)


def complementary_value(phi: YoungFunction, y):
    """Exact complementary Young function of ``phi`` evaluated at ``y``."""
    y = np.abs(np.asarray(y, dtype=np.float64))
    if phi is PHI1:
        return y * np.arcsinh(y) - np.sqrt(1.0 + y * y) + 1.0
    return phi.conjugate(y)


def _prepare(p: Density, f):
    f = np.ascontiguousarray(values_of(f), dtype=np.float64)
    if f.shape != (p.space.n,):
        raise DomainError(f"function has shape {f.shape}, expected ({p.space.n},)")
    if not np.all(np.isfinite(f)):
        raise DomainError("function has non-finite values")
    return np.ascontiguousarray(p.masses), f


def modular(phi: YoungFunction, p: Density, f, scale: float = 1.0) -> float:
    """``E_p[phi(scale * f)]``; ``inf`` once any argument passes the overflow clamp."""
    if not scale > 0:
        raise DomainError("modular scale must be positive")
    mw, f = _prepare(p, f)
    return kernels.modular(phi.value, mw, f, float(scale))


def luxemburg_norm(phi: YoungFunction, p: Density, f) -> float:
    """Gauge norm: the ``k`` at which ``E_p[phi(f / k)]`` equals one."""
    mw, f = _prepare(p, f)
    return kernels.luxemburg(phi.value, mw, f)


def orlicz_norm(phi: YoungFunction, p: Density, f) -> float:
    """Orlicz norm via the Amemiya infimum ``inf_k (1 + E_p[phi(k f)]) / k``.

    Equal to the dual supremum over the unit modular ball of the
    complementary function, and sandwiched by ``N(f) <= |f| <= 2 N(f)``.
    """
    mw, f = _prepare(p, f)
    return kernels.amemiya(phi.value, mw, f)


def holder_pairing(p: Density, f, g) -> float:
    """``E_p|f g|``, the left side of the generalised Holder inequality."""
    _, f = _prepare(p, f)
    _, g = _prepare(p, g)
    return float(p.masses @ np.abs(f * g))


def holder_bound(p: Density, f, g, phi: YoungFunction = PHI2) -> float:
    """Right side ``2 N_phi(f) N_psi(g)`` for the complementary pair of ``phi``.

    Only exact complementary pairs are accepted: with ``PHI1`` against
    ``PHI3`` the factor 2 is too small (constant functions violate it).
    """
    if not phi.exact_conjugate:
        raise DomainError(f"{phi.name} has no exact complement among PHI1..PHI3")
    return 2.0 * luxemburg_norm(phi, p, f) * luxemburg_norm(phi.conjugate, p, g)


def equivalent_norms_check(p: Density, f) -> tuple[float, float]:
    """Luxemburg norms of ``f`` for the equivalent pair ``PHI1`` and ``PHI2``."""
    return luxemburg_norm(PHI1, p, f), luxemburg_norm(PHI2, p, f)


def delta2_ratio(phi: YoungFunction, x):
    """``phi(2x) / phi(x)``; bounded for large ``x`` iff ``phi`` is in Delta_2."""
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        return phi(2.0 * x) / phi(x)

