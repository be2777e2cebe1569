"""Optional numba acceleration.

Set ``LATPOLY_DISABLE_NUMBA=1`` to force the pure-numpy kernels. When numba
is missing the numpy path is used automatically.
"""

import os

DISABLED = os.environ.get("LATPOLY_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return _numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrapper(f):
        return f

    return wrapper
