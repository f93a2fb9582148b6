"""Kernel backend selection.

Hot kernels exist in two lanes: numba @njit (default) and a pure numpy/python
fallback. The lane is chosen once at import time from the LANDSCAPELAW_BACKEND
environment variable ("numba" or "numpy"). With no variable set, numba is used
when it imports cleanly and the fallback otherwise.
"""

import os

_ENV_VAR = "LANDSCAPELAW_BACKEND"

_requested = os.environ.get(_ENV_VAR, "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"{_ENV_VAR} must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    NUMBA_AVAILABLE = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_AVAILABLE = True
    except ImportError:
        if _requested == "numba":
            raise
        NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and _requested != "numpy"


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
