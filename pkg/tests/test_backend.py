import os
import subprocess
import sys

import numpy as np

import infogeo
from infogeo import _fallback
from infogeo.orlicz import PHI1, luxemburg_norm, orlicz_norm


def _backend_with(env_value):
    env = {**os.environ, "INFOGEO_PURE_PYTHON": env_value}
    out = subprocess.run([sys.executable, "-c", "import infogeo; print(infogeo.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    return out.stdout.strip()


def test_environment_forces_fallback():
    assert _backend_with("1") == "python"
    assert _backend_with("0") == infogeo.BACKEND


def test_fallback_reproduces_closed_form(uniform2):
    one = np.ones(2)
    mw = uniform2.masses
    assert abs(_fallback.luxemburg(1, mw, one) - luxemburg_norm(PHI1, uniform2, one)) < 1e-15
    assert abs(_fallback.amemiya(1, mw, one) - orlicz_norm(PHI1, uniform2, one)) < 1e-13
