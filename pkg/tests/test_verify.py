import numpy as np
import pytest
import sympy as sp

from infogeo import verify
from infogeo.verify import (
    PROPERTIES,
    PROPERTY_NAMES,
    VerifyConfig,
    categorical_density,
    categorical_hessian,
    categorical_score,
    parametric_reduction_error,
    run_campaign,
)

THETAS = np.linspace(0.2, 0.9, 20)


def test_categorical_formulas_match_symbolic_derivatives():
    th = sp.symbols("theta", positive=True)
    logp = [sp.log(2 * th**2), sp.log(2 * (1 - th**2))]
    d1 = [sp.lambdify(th, sp.diff(l, th)) for l in logp]
    d2 = [sp.lambdify(th, sp.diff(l, th, 2)) for l in logp]
    for t in THETAS:
        np.testing.assert_allclose(categorical_score(t), [f(t) for f in d1], rtol=1e-14)
        np.testing.assert_allclose(categorical_hessian(t), [f(t) for f in d2], rtol=1e-14)
        assert categorical_density(t).masses.sum() == pytest.approx(1.0, abs=1e-15)


def test_parametric_reduction_at_twenty_points():
    errors = [parametric_reduction_error(t) for t in THETAS]
    assert max(errors) < 1e-8


def test_property_names_unique():
    assert len(set(PROPERTY_NAMES)) == len(PROPERTIES)


def test_report_is_deterministic():
    cfg = dict(seed=7, trials=3, only=("transport_duality", "mix_geodesic", "holder_inequality"))
    a = run_campaign(VerifyConfig(**cfg)).to_json()
    b = run_campaign(VerifyConfig(**cfg)).to_json()
    assert a == b
    c = run_campaign(VerifyConfig(**{**cfg, "seed": 8})).to_json()
    assert a != c


def test_properties_do_not_depend_on_selection():
    alone = run_campaign(VerifyConfig(seed=3, trials=4, only=("mixture_closure",)))
    together = run_campaign(VerifyConfig(seed=3, trials=4, only=("mixture_closure", "transport_duality")))
    rec = {r.name: r for r in together.records}["mixture_closure"]
    assert rec.max_error == alone.records[0].max_error


def test_zero_trials_is_flagged():
    report = run_campaign(VerifyConfig(trials=0))
    assert report.records == [] and report.note == "no trials" and report.passed


def test_impossible_tolerance_reports_failures():
    report = run_campaign(VerifyConfig(trials=2, tol=1e-16, only=("alpha_pair_duality", "mix_geodesic")))
    assert not report.passed
    for r in report.records:
        assert not r.passed and r.max_error > 1e-16 and r.tolerance == 1e-16


def test_lower_bound_properties_ignore_tol_override():
    report = run_campaign(VerifyConfig(trials=2, tol=1e-16, only=("geodesic_nondegeneracy",)))
    (r,) = report.records
    assert r.bound == "lower" and r.tolerance == 1e-4 and r.passed


@pytest.mark.parametrize("bad", [
    dict(seed=-1), dict(trials=-2), dict(tol=0.0), dict(atoms=(1, 5)), dict(atoms=(9, 3)),
    dict(only=("nope",)), dict(trials_by_property={"nope": 1}),
])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        VerifyConfig(**bad).validate()


def test_from_dict_rejects_unknown_keys():
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"seeds": 4})


def test_per_property_overrides():
    cfg = VerifyConfig(trials=1, trials_by_property={"transport_duality": 5},
                       tolerance_by_property={"transport_duality": 1e-3},
                       only=("transport_duality", "chart_bijectivity"))
    recs = {r.name: r for r in run_campaign(cfg).records}
    assert recs["transport_duality"].trials == 5 and recs["transport_duality"].tolerance == 1e-3
    assert recs["chart_bijectivity"].trials == 1


def test_json_floats_use_seventeen_significant_digits():
    report = run_campaign(VerifyConfig(trials=1, only=("sphere_radius",)))
    text = report.to_json()
    # %.17g drops trailing zeros, so exact short values stay short
    assert '"tolerance": 1e-10' in text
    assert f'"max_error": {report.records[0].max_error:.17g}' in text


def test_curve_spread_constant():
    assert 0 < verify.CURVE_SPREAD <= 1
