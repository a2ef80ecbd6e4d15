import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq, minimize_scalar

from oracles import dual_supremum

from infogeo import Density, DomainError, MeasureSpace, _fallback
from infogeo._backend import BACKEND, kernels
from infogeo.orlicz import (
    PHI1,
    PHI2,
    PHI3,
    YoungFunction,
    complementary_value,
    delta2_ratio,
    equivalent_norms_check,
    holder_bound,
    holder_pairing,
    luxemburg_norm,
    modular,
    orlicz_norm,
)

ALL = (PHI1, PHI2, PHI3)


def random_density(rng, n):
    S = MeasureSpace(rng.uniform(0.2, 2.0, n))
    return Density.normalized(S, np.exp(rng.standard_normal(n)))


# -- Young functions ---------------------------------------------------------

@pytest.mark.parametrize("x", [0.0, 1e-8, 3e-3, 0.00999, 0.01001, 0.3, 2.0, 40.0])
def test_young_closed_forms(x):
    # 50-digit references; just above the series cut-off the closed forms lose
    # about 2 eps / x to cancellation
    with mpmath.workdps(50):
        m = mpmath.mpf(x)
        want = [mpmath.cosh(m) - 1, mpmath.exp(m) - 1 - m, (1 + m) * mpmath.log(1 + m) - m]
    for phi, ref in zip(ALL, want):
        assert phi(x) == pytest.approx(float(ref), rel=1e-13, abs=1e-300)


def test_young_taylor_branch_is_accurate_for_tiny_arguments():
    # the naive formula cancels catastrophically here; the series does not
    x = 1e-6
    assert PHI2(x) == pytest.approx(x * x / 2 + x**3 / 6, rel=1e-15)
    assert PHI3(x) == pytest.approx(x * x / 2 - x**3 / 6, rel=1e-15)


@pytest.mark.parametrize("phi", ALL)
def test_young_is_even_and_vectorised(phi):
    xs = np.linspace(-5, 5, 41)
    vals = phi(xs)
    np.testing.assert_allclose(vals, vals[::-1], rtol=0, atol=0)
    np.testing.assert_allclose(vals, [phi(float(x)) for x in xs], rtol=1e-15)


def test_young_clamps_to_infinity():
    assert PHI1(701.0) == math.inf
    assert PHI2(701.0) == math.inf
    assert np.isfinite(PHI3(1e300))


def test_conjugate_pairs():
    assert PHI2.conjugate is PHI3 and PHI3.conjugate is PHI2
    assert PHI2.exact_conjugate and PHI3.exact_conjugate and not PHI1.exact_conjugate
    assert [phi.delta2 for phi in ALL] == [False, False, True]


@pytest.mark.parametrize("phi", ALL)
def test_complementary_value_is_legendre_transform(phi):
    # psi(y) = sup_x (x y - phi(x)), checked with a bounded scalar maximiser
    for y in (0.1, 0.7, 2.0, 5.0):
        res = minimize_scalar(lambda x: phi(x) - x * y, bounds=(0, 20 + 2 * math.exp(y)), method="bounded",
                              options={"xatol": 1e-12})
        assert complementary_value(phi, y) == pytest.approx(-res.fun, rel=1e-9)


def test_delta2_ratio():
    big = np.array([10.0, 100.0, 300.0])
    assert np.all(delta2_ratio(PHI3, big) < 4.0)
    assert np.all(np.diff(delta2_ratio(PHI1, big)) > 0)
    assert np.all(np.diff(delta2_ratio(PHI2, big)) > 0)


# -- modular and Luxemburg norm ----------------------------------------------

def test_modular_hand_values(uniform2):
    one = np.ones(2)
    assert modular(PHI1, uniform2, one) == pytest.approx(math.cosh(1) - 1, rel=1e-15)
    assert modular(PHI1, uniform2, one) == pytest.approx(0.5430806348, abs=1e-10)
    assert modular(PHI3, uniform2, one) == pytest.approx(2 * math.log(2) - 1, rel=1e-15)
    assert modular(PHI3, uniform2, one) == pytest.approx(0.3862943611, abs=1e-10)
    for phi in ALL:
        assert modular(phi, uniform2, np.zeros(2), 3.0) == 0.0
    with pytest.raises(DomainError):
        modular(PHI1, uniform2, one, 0.0)


def test_luxemburg_constant_function_closed_forms(rng):
    p = random_density(rng, 5)
    one = np.ones(5)
    assert luxemburg_norm(PHI1, p, one) == pytest.approx(1 / math.acosh(2), rel=1e-14)
    assert luxemburg_norm(PHI3, p, one) == pytest.approx(1 / (math.e - 1), rel=1e-14)
    k2 = 1 / brentq(lambda x: math.expm1(x) - x - 1, 0.1, 5, xtol=1e-15)
    assert luxemburg_norm(PHI2, p, one) == pytest.approx(k2, rel=1e-13)
    assert equivalent_norms_check(p, one) == pytest.approx((1 / math.acosh(2), k2), rel=1e-13)


@pytest.mark.parametrize("phi", ALL)
def test_luxemburg_zero_and_modular_identity(phi, rng):
    p = random_density(rng, 6)
    assert luxemburg_norm(phi, p, np.zeros(6)) == 0.0
    for _ in range(50):
        f = rng.standard_normal(6) * np.exp(rng.uniform(-3, 3))
        assert modular(phi, p, f, 1 / luxemburg_norm(phi, p, f)) == pytest.approx(1.0, abs=1e-10)


def test_luxemburg_against_root_finder(rng):
    p = random_density(rng, 4)
    f = rng.standard_normal(4)
    for phi in ALL:
        k = brentq(lambda k: modular(phi, p, f, 1 / k) - 1, 1e-3, 1e3, xtol=1e-15, rtol=1e-15)
        assert luxemburg_norm(phi, p, f) == pytest.approx(k, rel=1e-13)


def test_phi2_norm_dominates_phi1_norm(rng):
    for _ in range(100):
        p = random_density(rng, 5)
        f = rng.standard_normal(5)
        n1, n2 = equivalent_norms_check(p, f)
        assert n2 >= n1


@settings(max_examples=60, deadline=None)
@given(
    f=st.lists(st.floats(-50, 50), min_size=2, max_size=8).filter(lambda v: any(abs(x) > 1e-6 for x in v)),
    c=st.floats(-20, 20).filter(lambda c: abs(c) > 1e-3),
    phi=st.sampled_from(ALL),
)
def test_luxemburg_homogeneity(f, c, phi):
    f = np.array(f)
    p = Density.normalized(MeasureSpace(np.ones(len(f))), np.linspace(1, 2, len(f)))
    n = luxemburg_norm(phi, p, f)
    assert luxemburg_norm(phi, p, c * f) == pytest.approx(abs(c) * n, rel=1e-12)
    assert luxemburg_norm(phi, p, 2 * f) == pytest.approx(2 * n, rel=1e-12)


@pytest.mark.parametrize("phi", ALL)
def test_luxemburg_triangle(phi, rng):
    for _ in range(200):
        p = random_density(rng, 5)
        f, g = rng.standard_normal(5) * 3, rng.standard_normal(5) * 3
        lhs = luxemburg_norm(phi, p, f + g)
        assert lhs <= (luxemburg_norm(phi, p, f) + luxemburg_norm(phi, p, g)) * (1 + 1e-12)


# -- Orlicz norm -------------------------------------------------------------

@pytest.mark.parametrize("phi", ALL)
@pytest.mark.parametrize("n", [2, 3])
def test_amemiya_matches_dual_supremum(phi, n, rng):
    for _ in range(3 if n == 3 else 6):
        p = random_density(rng, n)
        f = rng.standard_normal(n) * 2
        assert orlicz_norm(phi, p, f) == pytest.approx(dual_supremum(phi, p, f), rel=1e-8)


@pytest.mark.parametrize("phi", ALL)
def test_orlicz_sandwich(phi, rng):
    p = random_density(rng, 7)
    assert orlicz_norm(phi, p, np.zeros(7)) == 0.0
    for _ in range(200):
        f = rng.standard_normal(7) * np.exp(rng.uniform(-3, 3))
        lux, orl = luxemburg_norm(phi, p, f), orlicz_norm(phi, p, f)
        assert lux * (1 - 1e-12) <= orl <= 2 * lux * (1 + 1e-12)


# -- Holder inequality -------------------------------------------------------

def test_holder_pairing_hand_values(uniform2):
    assert holder_pairing(uniform2, [1, -1], [1, 1]) == 1.0
    assert holder_pairing(uniform2, [1, -1], [0, 0]) == 0.0


@pytest.mark.parametrize("phi", [PHI2, PHI3])
def test_holder_inequality_complementary_pairs(phi, rng):
    for _ in range(2000):
        p = random_density(rng, int(rng.integers(2, 12)))
        f = rng.standard_normal(p.space.n) * np.exp(rng.uniform(-3, 3))
        g = rng.standard_normal(p.space.n) * np.exp(rng.uniform(-3, 3))
        assert holder_pairing(p, f, g) <= holder_bound(p, f, g, phi) * (1 + 1e-12)


def test_holder_constant_two_fails_for_cosh_against_phi3(uniform2):
    # PHI1 and PHI3 are not complementary; constants break the factor-2 bound
    one = np.ones(2)
    bound = 2 * luxemburg_norm(PHI1, uniform2, one) * luxemburg_norm(PHI3, uniform2, one)
    assert bound == pytest.approx(2 / (math.acosh(2) * (math.e - 1)), rel=1e-13)
    assert holder_pairing(uniform2, one, one) > bound
    with pytest.raises(DomainError):
        holder_bound(uniform2, one, one, PHI1)


def test_parse():
    assert YoungFunction.parse(2) is PHI2
    assert YoungFunction.parse("phi3") is PHI3
    with pytest.raises(ValueError):
        YoungFunction.parse(4)


# -- compiled kernels agree with the fallback --------------------------------

@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernels not built")
def test_compiled_and_fallback_agree(rng):
    for _ in range(200):
        n = int(rng.integers(2, 30))
        mw = rng.uniform(0.01, 1, n)
        f = rng.standard_normal(n) * np.exp(rng.uniform(-4, 4))
        for kind in (1, 2, 3):
            assert kernels.young_value(kind, f[0]) == pytest.approx(_fallback.young_value(kind, f[0]), rel=1e-15)
            assert kernels.modular(kind, mw, f, 0.7) == pytest.approx(_fallback.modular(kind, mw, f, 0.7), rel=1e-13)
            assert kernels.luxemburg(kind, mw, f) == pytest.approx(_fallback.luxemburg(kind, mw, f), rel=1e-14)
            assert kernels.amemiya(kind, mw, f) == pytest.approx(_fallback.amemiya(kind, mw, f), rel=1e-12)
