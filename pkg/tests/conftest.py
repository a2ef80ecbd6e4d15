import numpy as np
import pytest

from infogeo import Density, MeasureSpace


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def half():
    """Two atoms of weight one half; the uniform density is (1, 1)."""
    return MeasureSpace(np.array([0.5, 0.5]))


@pytest.fixture
def uniform2(half):
    return Density(half, np.array([1.0, 1.0]))


@pytest.fixture
def tilted2(half):
    return Density(half, np.array([1.2, 0.8]))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
