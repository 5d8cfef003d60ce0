"""numba switch.

Set ``STEFANSS_DISABLE_NUMBA=1`` to force the numpy/scipy fallback kernels.
The flag is read once, at import.
"""
from __future__ import annotations

import os

_FLAG = "STEFANSS_DISABLE_NUMBA"

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get(_FLAG, "0").strip().lower() not in ("1", "true", "yes")


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity otherwise."""
    if HAS_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
