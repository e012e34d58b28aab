"""Backend selection for the hot kernels.

Set ``HILBERT_ET_NUMBA=0`` to force the pure-numpy code path.  When numba is
missing the numpy path is used silently.  ``HILBERT_ET_THREADS`` caps the
number of numba worker threads.
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _flag(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off", "")


if HAVE_NUMBA and "NUMBA_THREADING_LAYER" not in os.environ:
    # the probe for an outdated system TBB only produces a warning
    numba.config.THREADING_LAYER = "workqueue"

USE_NUMBA = HAVE_NUMBA and _flag("HILBERT_ET_NUMBA", True)

if HAVE_NUMBA and os.environ.get("HILBERT_ET_THREADS"):
    numba.set_num_threads(max(1, min(int(os.environ["HILBERT_ET_THREADS"]), numba.config.NUMBA_NUM_THREADS)))


def njit(*args, **kwargs):
    """``numba.njit`` with on-disk caching; identity decorator without numba."""
    kwargs.setdefault("cache", True)
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)


# numba only recognises its own prange object inside jitted code
prange = numba.prange if HAVE_NUMBA else range


def backend():
    return "numba" if USE_NUMBA else "numpy"
