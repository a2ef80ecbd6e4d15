"""Independent reference computations used by several test modules."""

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from infogeo.orlicz import complementary_value


def _psi_inverse(phi, level):
    if level <= 0:
        return 0.0
    hi = 1.0
    while complementary_value(phi, hi) < level:
        hi *= 2
    return brentq(lambda y: complementary_value(phi, y) - level, 0.0, hi, xtol=1e-15, rtol=1e-15)


def _max_scalar(fn, hi):
    res = minimize_scalar(lambda x: -fn(x), bounds=(0.0, hi), method="bounded",
                          options={"xatol": 1e-11})
    return max(-res.fun, fn(0.0), fn(hi))


def dual_supremum(phi, p, f):
    """sup E_p|f g| over E_p psi(g) <= 1, by nested one-dimensional maximisation."""
    m, a = p.masses, np.abs(f)
    n = len(a)

    def best(level, i):
        # largest sum_{j>=i} m_j a_j g_j with sum_{j>=i} m_j psi(g_j) <= level
        if i == n - 1:
            return m[i] * a[i] * _psi_inverse(phi, level / m[i])
        top = _psi_inverse(phi, level / m[i])
        return _max_scalar(
            lambda g: m[i] * a[i] * g + best(max(level - m[i] * complementary_value(phi, g), 0.0), i + 1),
            top)

    return best(1.0, 0)
