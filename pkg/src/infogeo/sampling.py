"""Random instances for property sweeps.

Densities are log-normal around the uniform one; ``spread`` is the
standard deviation of the log-values and sets how far apart random
densities are, hence how fast curves between them move.
"""

from __future__ import annotations

import numpy as np

from infogeo.charts import chart_norm
from infogeo.measure import Density, MeasureSpace, TangentVector, center


def random_space(rng: np.random.Generator, n: int) -> MeasureSpace:
    return MeasureSpace(rng.uniform(0.2, 2.0, size=n))


def random_density(rng: np.random.Generator, space: MeasureSpace, spread: float = 1.0) -> Density:
    return Density.normalized(space, np.exp(spread * rng.standard_normal(space.n)))


def random_tangent(rng: np.random.Generator, p: Density, scale: float = 1.0) -> TangentVector:
    return center(p, scale * rng.standard_normal(p.space.n))


def random_ball_vector(rng: np.random.Generator, p: Density, radius: float = 0.9) -> TangentVector:
    """Random centred vector with chart norm drawn uniformly below ``radius``."""
    u = random_tangent(rng, p)
    while not np.any(u.vals):
        u = random_tangent(rng, p)
    target = radius * rng.uniform(0.05, 1.0)
    return u * (target / chart_norm(p, u))


def atom_count(rng: np.random.Generator, atoms: tuple[int, int]) -> int:
    lo, hi = atoms
    return int(rng.integers(lo, hi + 1))
