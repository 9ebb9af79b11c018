"""Backend selection for the hot kernels.

The kernels in :mod:`tribez.kernels` come in two flavours: scalar loops
compiled with numba, and array-at-a-time numpy code. Which one is used is
decided once, at import time, from the environment:

``TRIBEZ_BACKEND``
    ``"numba"`` (default when numba imports) or ``"numpy"``.
``NUMBA_DISABLE_JIT``
    When set to a true value the numpy path is forced as well, since running
    the loop kernels uncompiled would be very slow.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}


def _numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _select_backend():
    requested = os.getenv("TRIBEZ_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"TRIBEZ_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    if os.getenv("NUMBA_DISABLE_JIT", "").strip().lower() not in _FALSY:
        return "numpy"
    if not _numba_available():
        if requested == "numba":
            raise ImportError("TRIBEZ_BACKEND=numba but numba is not installed")
        return "numpy"
    return "numba"


BACKEND = _select_backend()
HAVE_NUMBA = _numba_available()

NUMBA_OPTS = {
    "cache": os.getenv("TRIBEZ_NUMBA_CACHE", "1").strip().lower() not in _FALSY,
    "nogil": True,
}
