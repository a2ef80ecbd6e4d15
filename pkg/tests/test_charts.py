import math

import numpy as np
import pytest

from infogeo import (
    ChartDomainError,
    ChartPoint,
    Density,
    DomainError,
    MeasureSpace,
    TangentVector,
    center,
    chart_forward,
    chart_inverse,
    chart_norm,
    in_chart_domain,
    mixture_point,
    partition_function,
    transition_map,
)
from infogeo.sampling import random_ball_vector, random_density, random_space, random_tangent


def test_partition_function_hand_values(uniform2):
    assert partition_function(uniform2, [0.0, 0.0]) == 1.0
    a = math.log(2)
    assert partition_function(uniform2, [a, -a]) == pytest.approx(1.25, rel=1e-15)


def test_partition_function_jensen_and_convexity(rng):
    for _ in range(300):
        S = random_space(rng, int(rng.integers(2, 10)))
        p = random_density(rng, S)
        u, v = random_tangent(rng, p), random_tangent(rng, p)
        lam = rng.uniform()
        assert partition_function(p, u) >= 1.0
        mixed = partition_function(p, lam * u + (1 - lam) * v)
        assert mixed <= lam * partition_function(p, u) + (1 - lam) * partition_function(p, v) + 1e-12


def test_chart_forward_hand_value(uniform2):
    assert chart_forward(uniform2, [0.0, 0.0]).vals.tolist() == [1.0, 1.0]
    q = chart_forward(uniform2, [0.2, -0.2])
    want = np.array([math.exp(0.2), math.exp(-0.2)]) / math.cosh(0.2)
    np.testing.assert_allclose(q.vals, want, rtol=1e-15)


def test_chart_forward_rejects_outside_unit_ball(uniform2):
    u = TangentVector(uniform2, [3.0, -3.0])
    assert chart_norm(uniform2, u) > 1
    with pytest.raises(ChartDomainError):
        chart_forward(uniform2, u)
    # the exponential formula itself is fine everywhere on a finite space
    q = chart_forward(uniform2, u, ball=None)
    assert q.space.w @ q.vals == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ChartDomainError):
        ChartPoint(uniform2, u)


def test_chart_inverse_hand_value(uniform2):
    q = Density(uniform2.space, [1.2, 0.8])
    want = center(uniform2, [math.log(1.2), math.log(0.8)]).vals
    np.testing.assert_allclose(chart_inverse(uniform2, q).vals, want, rtol=1e-15)
    np.testing.assert_array_equal(chart_inverse(uniform2, uniform2).vals, [0.0, 0.0])


def test_chart_inverse_reports_ball_membership(uniform2):
    far = Density(uniform2.space, [1.99, 0.01])
    u = chart_inverse(uniform2, far)
    assert not in_chart_domain(uniform2, far)
    assert chart_norm(uniform2, u) >= 1
    near = Density(uniform2.space, [1.1, 0.9])
    assert in_chart_domain(uniform2, near)


def test_chart_round_trip(rng):
    for _ in range(500):
        S = random_space(rng, int(rng.integers(2, 64)))
        p = random_density(rng, S)
        u = random_ball_vector(rng, p)
        back = chart_inverse(p, chart_forward(p, u))
        assert np.max(np.abs(back.vals - u.vals)) < 1e-10
        q = ChartPoint(p, u).density
        assert np.max(np.abs(chart_forward(p, chart_inverse(p, q)).vals / q.vals - 1)) < 1e-12


def test_luxemburg_ball_option(uniform2):
    u = TangentVector(uniform2, [0.9, -0.9])
    assert chart_norm(uniform2, u, "luxemburg") < chart_norm(uniform2, u, "orlicz")


def test_transition_identity_and_zero(rng):
    S = random_space(rng, 6)
    p1, p2 = random_density(rng, S), random_density(rng, S)
    u = random_tangent(rng, p1)
    np.testing.assert_allclose(transition_map(p1, p1, u).vals, u.vals, atol=1e-15)
    zero = TangentVector(p1, np.zeros(6))
    want = center(p2, np.log(p1.vals / p2.vals)).vals
    np.testing.assert_allclose(transition_map(p1, p2, zero).vals, want, atol=1e-14)


def test_transition_equals_chart_composition(rng):
    for _ in range(300):
        S = random_space(rng, int(rng.integers(2, 20)))
        p1, p2 = random_density(rng, S, 0.3), random_density(rng, S, 0.3)
        u = random_ball_vector(rng, p1, 0.5)
        direct = chart_inverse(p2, chart_forward(p1, u))
        assert np.max(np.abs(transition_map(p1, p2, u).vals - direct.vals)) < 1e-10


def test_transition_cocycle(rng):
    for _ in range(300):
        S = random_space(rng, int(rng.integers(2, 64)))
        p1, p2, p3 = (random_density(rng, S) for _ in range(3))
        u = random_tangent(rng, p1)
        lhs = transition_map(p2, p3, transition_map(p1, p2, u))
        assert np.max(np.abs(lhs.vals - transition_map(p1, p3, u).vals)) < 1e-10


def test_mixture_point(half):
    q1 = Density(half, [1.2, 0.8])
    q2 = Density(half, [0.8, 1.2])
    assert mixture_point(q1, q2, 1.0) is q1
    assert mixture_point(q1, q2, 0.0) is q2
    np.testing.assert_allclose(mixture_point(q1, q2, 0.5).vals, [1.0, 1.0], rtol=1e-15)
    with pytest.raises(DomainError):
        mixture_point(q1, q2, 1.5)


def test_mixture_closure(rng):
    for _ in range(300):
        S = random_space(rng, int(rng.integers(2, 40)))
        p = random_density(rng, S, 0.5)
        q1 = chart_forward(p, random_ball_vector(rng, p, 0.4))
        q2 = chart_forward(p, random_ball_vector(rng, p, 0.4))
        q = mixture_point(q1, q2, rng.uniform())
        assert q.space.w @ q.vals == pytest.approx(1.0, abs=1e-14)
        back = chart_forward(p, chart_inverse(p, q))
        assert np.max(np.abs(back.vals / q.vals - 1)) < 1e-10


def test_different_spaces_rejected(uniform2):
    other = Density.uniform(MeasureSpace(np.ones(3) / 3))
    with pytest.raises(DomainError):
        chart_inverse(uniform2, other)
