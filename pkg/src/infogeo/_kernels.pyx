# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels for the Orlicz machinery.

Mirrors :mod:`infogeo._fallback` line for line; both must agree to
rounding.  ``mw`` is the combined measure ``w * p`` of every atom.
"""

from libc.math cimport sinh, expm1, log, log1p, exp, fabs, INFINITY

cdef double CLAMP = 700.0
cdef double TAYLOR_CUT = 1e-2
cdef double INV_PHI = 0.6180339887498949
cdef int MAX_BRACKET = 2000


cdef inline double young(int kind, double x) noexcept nogil:
    cdef double s
    x = fabs(x)
    if kind == 1:
        if x > CLAMP:
            return INFINITY
        s = sinh(0.5 * x)
        return 2.0 * s * s
    elif kind == 2:
        if x > CLAMP:
            return INFINITY
        if x < TAYLOR_CUT:
            return x * x * (1.0 / 2 + x * (1.0 / 6 + x * (1.0 / 24 + x * (
                1.0 / 120 + x * (1.0 / 720 + x * (1.0 / 5040))))))
        return expm1(x) - x
    else:
        if x < TAYLOR_CUT:
            return x * x * (1.0 / 2 - x * (1.0 / 6 - x * (1.0 / 12 - x * (
                1.0 / 20 - x * (1.0 / 30 - x * (1.0 / 42 - x * (1.0 / 56)))))))
        return (1.0 + x) * log1p(x) - x


cdef double _modular(int kind, const double[::1] mw, const double[::1] f,
                     double scale) noexcept nogil:
    cdef Py_ssize_t i
    cdef double acc = 0.0, y
    for i in range(mw.shape[0]):
        y = young(kind, scale * f[i])
        if y == INFINITY:
            return INFINITY
        acc += mw[i] * y
    return acc


cdef double _absmax(const double[::1] f) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0
    for i in range(f.shape[0]):
        if fabs(f[i]) > m:
            m = fabs(f[i])
    return m


def young_value(int kind, double x):
    return young(kind, x)


def modular(int kind, const double[::1] mw, const double[::1] f, double scale):
    return _modular(kind, mw, f, scale)


def luxemburg(int kind, const double[::1] mw, const double[::1] f,
              double rtol=4e-16, int max_iter=200):
    cdef double fmax = _absmax(f)
    cdef double lo, hi, mid
    cdef int it
    if fmax == 0.0:
        return 0.0
    lo = fmax
    hi = fmax
    it = 0
    if _modular(kind, mw, f, 1.0 / fmax) > 1.0:
        while _modular(kind, mw, f, 1.0 / hi) > 1.0:
            hi *= 2.0
            it += 1
            if it > MAX_BRACKET:
                raise ArithmeticError("luxemburg bracket failed")
        lo = 0.5 * hi
    else:
        while _modular(kind, mw, f, 1.0 / lo) <= 1.0:
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
        if _modular(kind, mw, f, 1.0 / mid) > 1.0:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi)


cdef inline double _amemiya_obj(int kind, const double[::1] mw,
                                const double[::1] f, double x) noexcept nogil:
    cdef double k = exp(x)
    return (1.0 + _modular(kind, mw, f, k)) / k


def amemiya(int kind, const double[::1] mw, const double[::1] f,
            double tol=1e-12, int max_iter=200):
    cdef double fmax = _absmax(f)
    cdef double a, b, c, d, fa, fb, fc, fd, step, x0, best
    cdef int it
    if fmax == 0.0:
        return 0.0
    x0 = -log(luxemburg(kind, mw, f))
    # bracket the minimiser of the unimodal objective in log k
    step = 1.0
    a = x0 - step
    b = x0 + step
    c = x0
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
    if fc < best:
        best = fc
    if fd < best:
        best = fd
    return best
