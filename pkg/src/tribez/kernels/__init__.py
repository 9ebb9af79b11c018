"""Hot numeric kernels, dispatched to numba or numpy per ``tribez._accel``.

Both implementations are importable directly as ``kernels._numpy`` and
(when numba is installed) ``kernels._numba``; the names exported here are
the ones selected for the running process.
"""

from .._accel import BACKEND

if BACKEND == "numba":
    from ._numba import (
        bernstein1d_sum,
        decasteljau_tri,
        etable_fill,
        jacobi_cheb_sums,
    )
else:
    from ._numpy import (
        bernstein1d_sum,
        decasteljau_tri,
        etable_fill,
        jacobi_cheb_sums,
    )

__all__ = [
    "BACKEND",
    "bernstein1d_sum",
    "decasteljau_tri",
    "etable_fill",
    "jacobi_cheb_sums",
]
