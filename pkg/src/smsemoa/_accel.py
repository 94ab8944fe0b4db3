"""Backend toggle for the hot kernels.

Every function in :mod:`smsemoa.kernels` is written in nopython-compatible
style and decorated with :func:`kernel`. With numba available (the default)
the functions are JIT-compiled; setting the environment variable
``SMSEMOA_NUMBA=0`` before import selects the pure-Python fallback, which
runs the very same source and therefore produces bit-identical results.
"""

import os

import numpy as np

ENV_FLAG = "SMSEMOA_NUMBA"


def _numba_enabled() -> bool:
    raw = os.environ.get(ENV_FLAG, "").strip().lower()
    if raw in {"0", "false", "off", "no"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_enabled()

if NUMBA_ENABLED:
    from numba import njit

    def kernel(func):
        return njit(cache=True)(func)

else:

    def kernel(func):
        # uint64 state arithmetic relies on silent wraparound; numpy only
        # warns for scalars, and only outside this errstate.
        return np.errstate(over="ignore")(func)
