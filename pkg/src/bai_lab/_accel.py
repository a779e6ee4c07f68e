"""Backend selection for the hot kernels.

Set ``BAI_LAB_DISABLE_NUMBA=1`` to route every batch computation through the
pure-numpy implementations. Numba's own ``NUMBA_DISABLE_JIT`` is respected too.
"""

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAS_NUMBA = False


def _flag(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


NUMBA_DISABLED = _flag("BAI_LAB_DISABLE_NUMBA") or _flag("NUMBA_DISABLE_JIT")

NUMBA_OPTS = {"cache": True, "nogil": True}

BACKENDS = ("numba", "numpy")


def njit(*args, **kwargs):
    """``numba.njit`` with project defaults; identity when numba is missing."""
    opts = dict(NUMBA_OPTS, **kwargs)

    def wrap(func):
        if numba is None:
            return func
        return numba.njit(**opts)(func)

    if args and callable(args[0]):
        return wrap(args[0])
    return wrap


prange = range if numba is None else numba.prange

if numba is not None and "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is too old and numba warns on every probe
    numba.config.THREADING_LAYER = "omp"


def default_backend():
    if HAS_NUMBA and not NUMBA_DISABLED:
        return "numba"
    return "numpy"


def resolve_backend(backend=None):
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def resolve_workers(workers=None):
    """``BAI_LAB_WORKERS`` wins over an explicit count; cores otherwise."""
    env = os.environ.get("BAI_LAB_WORKERS")
    if env:
        return max(1, int(env))
    if workers is None:
        return os.cpu_count() or 1
    return max(1, int(workers))


def set_workers(workers=None):
    """Bound the numba thread pool; returns the count actually used."""
    workers = resolve_workers(workers)
    if numba is not None and not NUMBA_DISABLED:
        workers = min(workers, numba.config.NUMBA_NUM_THREADS)
        numba.set_num_threads(workers)
    return workers
