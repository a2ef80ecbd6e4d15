"""Pure-Python twin of :mod:`infogeo._kernels`.

Used when the compiled extension is unavailable or when
``INFOGEO_PURE_PYTHON`` is set.  The algorithms are identical; only the
per-atom loop is replaced by numpy reductions.
"""

import math

import numpy as np

CLAMP = 700.0
TAYLOR_CUT = 1e-2
INV_PHI = 0.6180339887498949
MAX_BRACKET = 2000


def _young_array(kind, x):
    x = np.abs(x)
    out = np.empty_like(x)
    small = x < TAYLOR_CUT
    xs = x[small]
    xl = x[~small]
    if kind == 1:
        out = 2.0 * np.sinh(0.5 * np.minimum(x, CLAMP)) ** 2
        out[x > CLAMP] = np.inf
        return out
    if kind == 2:
        out[small] = xs * xs * (1.0 / 2 + xs * (1.0 / 6 + xs * (1.0 / 24 + xs * (
            1.0 / 120 + xs * (1.0 / 720 + xs * (1.0 / 5040))))))
        with np.errstate(over="ignore"):
            out[~small] = np.where(xl > CLAMP, np.inf, np.expm1(np.minimum(xl, CLAMP)) - xl)
        return out
    out[small] = xs * xs * (1.0 / 2 - xs * (1.0 / 6 - xs * (1.0 / 12 - xs * (
        1.0 / 20 - xs * (1.0 / 30 - xs * (1.0 / 42 - xs * (1.0 / 56)))))))
    out[~small] = (1.0 + xl) * np.log1p(xl) - xl
    return out


def young_value(kind, x):
    return float(_young_array(kind, np.array([x], dtype=np.float64))[0])


def modular(kind, mw, f, scale):
    y = _young_array(kind, scale * np.asarray(f))
    if np.isinf(y).any():
        return math.inf
    return float(np.dot(mw, y))


def luxemburg(kind, mw, f, rtol=4e-16, max_iter=200):
    f = np.asarray(f)
    fmax = float(np.max(np.abs(f)))
    if fmax == 0.0:
        return 0.0
    lo = hi = fmax
    it = 0
    if modular(kind, mw, f, 1.0 / fmax) > 1.0:
        while modular(kind, mw, f, 1.0 / hi) > 1.0:
            hi *= 2.0
            it += 1
            if it > MAX_BRACKET:
                raise ArithmeticError("luxemburg bracket failed")
        lo = 0.5 * hi
    else:
        while modular(kind, mw, f, 1.0 / lo) <= 1.0:
            lo *= 0.5
            it += 1
            if it > MAX_BRACKET:
                raise ArithmeticError("luxemburg bracket failed")
        hi = 2.0 * lo
    it = 0
    while hi - lo > rtol * hi and it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if modular(kind, mw, f, 1.0 / mid) > 1.0:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi)


def _amemiya_obj(kind, mw, f, x):
    k = math.exp(x)
    return (1.0 + modular(kind, mw, f, k)) / k


def amemiya(kind, mw, f, tol=1e-12, max_iter=200):
    f = np.asarray(f)
    if float(np.max(np.abs(f))) == 0.0:
        return 0.0
    x0 = -math.log(luxemburg(kind, mw, f))
    step = 1.0
    a, b, c = x0 - step, x0 + step, x0
    fa = _amemiya_obj(kind, mw, f, a)
    fb = _amemiya_obj(kind, mw, f, b)
    fc = _amemiya_obj(kind, mw, f, c)
    it = 0
    while not (fc <= fa and fc <= fb):
        if fa < fc:
            b, fb = c, fc
            c, fc = a, fa
            step *= 2.0
            a = c - step
            fa = _amemiya_obj(kind, mw, f, a)
        else:
            a, fa = c, fc
            c, fc = b, fb
            step *= 2.0
            b = c + step
            fb = _amemiya_obj(kind, mw, f, b)
        it += 1
        if it > MAX_BRACKET:
            raise ArithmeticError("amemiya bracket failed")
    best = fc
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = _amemiya_obj(kind, mw, f, c)
    fd = _amemiya_obj(kind, mw, f, d)
    it = 0
    while b - a > tol and it < max_iter:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = _amemiya_obj(kind, mw, f, c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = _amemiya_obj(kind, mw, f, d)
        it += 1
    return min(best, fc, fd)
