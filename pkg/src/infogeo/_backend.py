"""Pick the compiled kernels when available, the pure-Python twin otherwise.

Set ``INFOGEO_PURE_PYTHON=1`` to force the fallback.
"""

import os

from infogeo import _fallback

if os.environ.get("INFOGEO_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from infogeo import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
