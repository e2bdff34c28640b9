"""Backend selection for the hot numeric kernels.

Two implementations of every hot kernel live in ``_kernels``: a numba
@njit version (scalar loops) and a vectorized pure-numpy fallback.
The environment variable ``BIHARM_BACKEND`` picks one:

    BIHARM_BACKEND=numba   require numba, fail loudly if missing
    BIHARM_BACKEND=numpy   force the pure-numpy path
    BIHARM_BACKEND=auto    (default) numba if importable, else numpy

``BIHARM_NUM_THREADS`` caps the numba thread pool (kernels here are
sequential per call; the cap exists so batch callers stay reproducible).
"""
import os

_choice = os.environ.get("BIHARM_BACKEND", "auto").strip().lower()

NUMBA_AVAILABLE = False
try:
    import numba  # noqa: F401
    NUMBA_AVAILABLE = True
except ImportError:
    pass

if _choice in ("numpy", "np"):
    USE_NUMBA = False
elif _choice in ("numba", "jit"):
    if not NUMBA_AVAILABLE:
        raise ImportError("BIHARM_BACKEND=numba but numba is not importable")
    USE_NUMBA = True
elif _choice == "auto":
    USE_NUMBA = NUMBA_AVAILABLE
else:
    raise ValueError(f"BIHARM_BACKEND={_choice!r}: expected numba, numpy or auto")

if USE_NUMBA:
    _threads = os.environ.get("BIHARM_NUM_THREADS")
    if _threads:
        import numba as _nb
        _nb.set_num_threads(max(1, int(_threads)))


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
