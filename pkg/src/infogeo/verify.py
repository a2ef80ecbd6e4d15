"""Property campaign: every identity of the geometry checked on random instances.

Each property draws its trials from an independent generator seeded by
``(seed, property index, trial index)``, so results do not depend on
which other properties run or on evaluation order.
"""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from infogeo import alpha as ag
from infogeo import charts, connections as cn, orlicz
from infogeo.report import dumps
from infogeo.measure import Density, MeasureSpace, center, expectation
from infogeo.sampling import (
    atom_count,
    random_ball_vector,
    random_density,
    random_space,
    random_tangent,
)

log = logging.getLogger(__name__)

MIXTURE_ALPHAS = (-0.75, -0.5, 0.0, 0.5, 0.75)
#: Log-spread of densities on curves whose residuals are differenced.
CURVE_SPREAD = 0.5


@dataclass
class PropertyRecord:
    name: str
    anchor: str
    trials: int
    max_error: float
    tolerance: float
    passed: bool
    bound: str = "upper"


@dataclass
class VerificationReport:
    seed: int
    records: list = field(default_factory=list)
    wall_clock: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "seed": self.seed,
            "passed": self.passed,
            "note": self.note,
            "records": [asdict(r) for r in self.records],
        }
        if timing:
            out["wall_clock_seconds"] = self.wall_clock
        return out

    def to_json(self, timing: bool = False) -> str:
        return dumps(self.to_dict(timing))


@dataclass(frozen=True)
class Property:
    name: str
    anchor: str
    trials: int
    tolerance: float
    check: Callable[[np.random.Generator, tuple], float]
    bound: str = "upper"


# --------------------------------------------------------------------------
# single-trial checks; each returns the observed error

def _duality(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p, q = random_density(rng, S), random_density(rng, S)
    return abs(cn.duality_gap(p, q, random_tangent(rng, p), random_tangent(rng, p)))


def _random_analytic_curve(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S, CURVE_SPREAD)
    which = rng.integers(3)
    if which == 0:
        return p, cn.exp_segment(p, random_tangent(rng, p), domain=(-1.0, 1.0))
    if which == 1:
        q2 = random_density(rng, S, CURVE_SPREAD)
        return p, cn.mix_segment(p, q2)
    return p, cn.chart_line(p, random_tangent(rng, p, 0.5), random_tangent(rng, p), (-1.0, 1.0))


def _random_field(rng, p):
    n = p.space.n
    which = rng.integers(3)
    if which == 0:
        return cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    if which == 1:
        return cn.exp_parallel_field(rng.standard_normal(n))
    return cn.mix_parallel_field(p, random_tangent(rng, p))


def _alpha_mixture(rng, atoms, alpha=None):
    p, c = _random_analytic_curve(rng, atoms)
    s = _random_field(rng, p)
    a = MIXTURE_ALPHAS[rng.integers(len(MIXTURE_ALPHAS))] if alpha is None else alpha
    t0 = rng.uniform(*c.domain)
    return ag.convex_combination_gap(a, s, c, t0)


def _alpha_pair(rng, atoms):
    p, c = _random_analytic_curve(rng, atoms)
    n = p.space.n
    s1 = cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    s2 = cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    a = rng.uniform(-0.9, 0.9)
    return abs(ag.alpha_duality_gap(a, s1, s2, c, rng.uniform(*c.domain)))


def _product_rule(rng, atoms):
    p, c = _random_analytic_curve(rng, atoms)
    n = p.space.n
    s1 = cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    s2 = cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    return abs(cn.duality_product_gap(s1, s2, c, rng.uniform(*c.domain)))


def _log_identity(rng, atoms):
    # E_p[d_v s] = -E_p[s * dlog] for any field centred along the curve
    p, c = _random_analytic_curve(rng, atoms)
    n = p.space.n
    s = cn.smooth_field(rng.standard_normal(n), rng.standard_normal(n))
    t0 = rng.uniform(*c.domain)
    q = c(t0)
    d = cn.directional_derivative(s, c, t0)
    return abs(expectation(q, d) + expectation(q, s(q).vals * c.dlog(t0)))


def _exp_geodesic(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S, CURVE_SPREAD)
    return cn.geodesic_residual(cn.exp_segment(p, random_tangent(rng, p)), "exp")


def _mix_geodesic(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    c = cn.mix_segment(random_density(rng, S, CURVE_SPREAD), random_density(rng, S, CURVE_SPREAD))
    return cn.geodesic_residual(c, "mix")


def _mismatch(rng, atoms):
    S = random_space(rng, max(3, atom_count(rng, atoms)))
    q1, q2 = random_density(rng, S, CURVE_SPREAD), random_density(rng, S, CURVE_SPREAD)
    p = random_density(rng, S, CURVE_SPREAD)
    return min(
        cn.geodesic_residual(cn.mix_segment(q1, q2), "exp"),
        cn.geodesic_residual(cn.exp_segment(p, random_tangent(rng, p)), "mix"),
    )


def _mixture_closure(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S, CURVE_SPREAD)
    q1 = charts.chart_forward(p, random_ball_vector(rng, p, 0.4))
    q2 = charts.chart_forward(p, random_ball_vector(rng, p, 0.4))
    q = charts.mixture_point(q1, q2, rng.uniform(0.0, 1.0))
    u = charts.chart_inverse(p, q)
    back = charts.chart_forward(p, u)
    return float(np.max(np.abs(back.vals - q.vals) / q.vals))


def _chart_bijectivity(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    u = random_ball_vector(rng, p)
    return float(np.max(np.abs(charts.chart_inverse(p, charts.chart_forward(p, u)).vals - u.vals)))


def _cocycle(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p1, p2, p3 = (random_density(rng, S) for _ in range(3))
    u = random_tangent(rng, p1)
    two_step = charts.transition_map(p2, p3, charts.transition_map(p1, p2, u))
    return float(np.max(np.abs(two_step.vals - charts.transition_map(p1, p3, u).vals)))


def _random_function(rng, n):
    return rng.standard_normal(n) * np.exp(rng.uniform(-2.0, 2.0))


def _modular_identity(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    f = _random_function(rng, S.n)
    phi = orlicz.YoungFunction(int(rng.integers(1, 4)))
    return abs(orlicz.modular(phi, p, f, 1.0 / orlicz.luxemburg_norm(phi, p, f)) - 1.0)


def _holder(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    f, g = _random_function(rng, S.n), _random_function(rng, S.n)
    phi = orlicz.PHI2 if rng.integers(2) == 0 else orlicz.PHI3
    excess = orlicz.holder_pairing(p, f, g) - orlicz.holder_bound(p, f, g, phi)
    return max(0.0, excess)


def _triangle(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    f, g = _random_function(rng, S.n), _random_function(rng, S.n)
    phi = orlicz.YoungFunction(int(rng.integers(1, 4)))
    nf, ng = orlicz.luxemburg_norm(phi, p, f), orlicz.luxemburg_norm(phi, p, g)
    return max(0.0, orlicz.luxemburg_norm(phi, p, f + g) - nf - ng) / (nf + ng)


def _homogeneity(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    f = _random_function(rng, S.n)
    c = rng.uniform(-10.0, 10.0)
    phi = orlicz.YoungFunction(int(rng.integers(1, 4)))
    nf = orlicz.luxemburg_norm(phi, p, f)
    return abs(orlicz.luxemburg_norm(phi, p, c * f) - abs(c) * nf) / (abs(c) * nf)


def _sandwich(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    f = _random_function(rng, S.n)
    phi = orlicz.YoungFunction(int(rng.integers(1, 4)))
    lux = orlicz.luxemburg_norm(phi, p, f)
    orl = orlicz.orlicz_norm(phi, p, f)
    return max(0.0, lux - orl, orl - 2.0 * lux) / lux


def _random_alpha(rng):
    return ag.AlphaParam(rng.uniform(-0.95, 0.95))


def _sphere_radius(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    a = _random_alpha(rng)
    pt = ag.alpha_embed(a, random_density(rng, S))
    return abs(pt.radius - a.r) / a.r


def _tangency(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    a = _random_alpha(rng)
    return abs(ag.tangency_defect(a, p, ag.pushforward(a, p, random_tangent(rng, p))))


def _idempotence(rng, atoms):
    S = random_space(rng, atom_count(rng, atoms))
    p = random_density(rng, S)
    a = _random_alpha(rng)
    g = rng.standard_normal(S.n)
    once = ag.sphere_project(a, p, g)
    return float(np.max(np.abs(ag.sphere_project(a, p, once) - once)))


# --------------------------------------------------------------------------
# parametric reduction on a two-atom categorical family

CATEGORICAL_SPACE = MeasureSpace(np.array([0.5, 0.5]))
CATEGORICAL_RANGE = (0.2, 0.9)


def categorical_density(theta: float) -> Density:
    """Masses ``(theta^2, 1 - theta^2)`` against the half-half measure."""
    return Density(CATEGORICAL_SPACE, np.array([2.0 * theta**2, 2.0 * (1.0 - theta**2)]))


def categorical_score(theta: float) -> np.ndarray:
    return np.array([2.0 / theta, -2.0 * theta / (1.0 - theta**2)])


def categorical_hessian(theta: float) -> np.ndarray:
    return np.array([-2.0 / theta**2, -2.0 * (1.0 + theta**2) / (1.0 - theta**2) ** 2])


def categorical_curve() -> cn.Curve:
    return cn.custom_curve(categorical_density, dlog=categorical_score, domain=CATEGORICAL_RANGE)


def parametric_reduction_error(theta: float) -> float:
    c = categorical_curve()
    s = cn.curve_tangent_field(c)
    p = categorical_density(theta)
    hess, score = categorical_hessian(theta), categorical_score(theta)
    want_exp = hess - expectation(p, hess)
    want_mix = hess + score * score
    got_exp = cn.nabla_exp(s, c, theta).vals
    got_mix = cn.nabla_mix(s, c, theta).vals
    return float(max(np.max(np.abs(got_exp - want_exp)), np.max(np.abs(got_mix - want_mix))))


def _parametric(rng, atoms):
    return parametric_reduction_error(rng.uniform(*CATEGORICAL_RANGE))


def _delta2(rng, atoms):
    # PHI3 ratio stays under one constant on [1, 100]; PHI1's is unbounded
    xs = np.linspace(1.0, 100.0, 400)
    bounded = float(np.max(orlicz.delta2_ratio(orlicz.PHI3, xs)))
    grows = orlicz.delta2_ratio(orlicz.PHI1, np.array([10.0, 50.0, 100.0]))
    ok = bounded <= 4.0 and np.all(np.diff(grows) > 0) and grows[-1] > 1e40
    return 0.0 if ok else 1.0


PROPERTIES = (
    Property("transport_duality", "exp/mix transports preserve the Fisher pairing", 10_000, 1e-12,
             _duality),
    Property("dual_product_rule", "exp/mix product rule for the Fisher pairing", 500, 1e-6,
             _product_rule),
    Property("log_identity", "centring identity E[d_v s] = -E[s l']", 500, 1e-8, _log_identity),
    Property("alpha_convex_mixture", "alpha derivative = convex mixture of exp and mix", 1_000, 1e-8,
             _alpha_mixture),
    Property("alpha_pair_duality", "alpha and -alpha are dual", 1_000, 1e-5, _alpha_pair),
    Property("exp_geodesic", "exponential families are exp-geodesics", 100, 1e-8, _exp_geodesic),
    Property("mix_geodesic", "mixture lines are mix-geodesics", 100, 1e-8, _mix_geodesic),
    Property("geodesic_nondegeneracy", "mismatched geodesic residual", 100, 1e-4, _mismatch, "lower"),
    Property("mixture_closure", "convex mixtures stay in the exponential model", 1_000, 1e-10,
             _mixture_closure),
    Property("chart_bijectivity", "chart round trip", 1_000, 1e-10, _chart_bijectivity),
    Property("transition_cocycle", "transition maps compose", 1_000, 1e-10, _cocycle),
    Property("luxemburg_modular_identity", "Luxemburg norm solves modular = 1", 1_000, 1e-10,
             _modular_identity),
    Property("holder_inequality", "generalised Holder inequality", 10_000, 1e-10, _holder),
    Property("norm_triangle", "Luxemburg triangle inequality", 1_000, 1e-10, _triangle),
    Property("norm_homogeneity", "Luxemburg absolute homogeneity", 1_000, 1e-12, _homogeneity),
    Property("orlicz_sandwich", "N(f) <= |f| <= 2 N(f)", 1_000, 1e-12, _sandwich),
    Property("delta2_classification", "Delta_2 class of PHI1 vs PHI3", 1, 0.5, _delta2),
    Property("sphere_radius", "alpha-embedding lands on the radius-r sphere", 1_000, 1e-10,
             _sphere_radius),
    Property("pushforward_tangency", "pushforward is tangent to the sphere", 1_000, 1e-12, _tangency),
    Property("projection_idempotence", "canonical projection is idempotent", 1_000, 1e-12,
             _idempotence),
    Property("parametric_reduction", "classical parametric formulas", 20, 1e-8, _parametric),
)

PROPERTY_NAMES = tuple(p.name for p in PROPERTIES)


@dataclass
class VerifyConfig:
    seed: int = 42
    trials: Optional[int] = None
    tol: Optional[float] = None
    atoms: tuple = (2, 64)
    only: Optional[tuple] = None
    trials_by_property: dict = field(default_factory=dict)
    tolerance_by_property: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyConfig":
        known = {"seed", "trials", "tol", "atoms", "only", "trials_by_property",
                 "tolerance_by_property"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    def validate(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.trials is not None and (not isinstance(self.trials, int) or self.trials < 0):
            raise ValueError("trials must be a non-negative integer")
        if self.tol is not None and not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ValueError("tol must be a positive number")
        lo, hi = self.atoms
        if not (isinstance(lo, int) and isinstance(hi, int) and 2 <= lo <= hi):
            raise ValueError("atoms must be a pair 2 <= lo <= hi")
        self.atoms = (lo, hi)
        names = set(self.only or ()) | set(self.trials_by_property) | set(self.tolerance_by_property)
        unknown = names - set(PROPERTY_NAMES)
        if unknown:
            raise ValueError(f"unknown properties: {sorted(unknown)}")


def run_property(index: int, prop: Property, cfg: VerifyConfig) -> PropertyRecord:
    trials = cfg.trials_by_property.get(prop.name, prop.trials if cfg.trials is None else cfg.trials)
    tol = cfg.tolerance_by_property.get(prop.name, prop.tolerance)
    if cfg.tol is not None and prop.bound == "upper":
        tol = cfg.tol
    observed = []
    for k in range(trials):
        rng = np.random.default_rng([cfg.seed, index, k])
        observed.append(prop.check(rng, cfg.atoms))
    if prop.bound == "upper":
        stat = max(observed, default=0.0)
        passed = stat < tol
    else:
        stat = min(observed, default=np.inf)
        passed = stat > tol
    log.info("%s: %s over %d trials (tol %.1e) -> %s", prop.name, stat, trials, tol,
             "pass" if passed else "FAIL")
    return PropertyRecord(prop.name, prop.anchor, trials, float(stat), tol, bool(passed), prop.bound)


def run_campaign(cfg: Optional[VerifyConfig] = None) -> VerificationReport:
    cfg = cfg or VerifyConfig()
    cfg.validate()
    start = time.perf_counter()
    report = VerificationReport(seed=cfg.seed)
    for index, prop in enumerate(PROPERTIES):
        if cfg.only and prop.name not in cfg.only:
            continue
        trials = cfg.trials_by_property.get(prop.name, prop.trials if cfg.trials is None else cfg.trials)
        if trials == 0:
            continue
        report.records.append(run_property(index, prop, cfg))
    if not report.records:
        report.note = "no trials"
    report.wall_clock = time.perf_counter() - start
    return report
