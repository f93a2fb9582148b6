"""Active kernel lane, chosen once at import (see backend.py)."""

from .backend import USE_NUMBA, backend_name  # noqa: F401

if USE_NUMBA:
    from ._kernels_nb import (  # noqa: F401
        cg_stencil,
        count_pivots_banded_2d,
        count_pivots_cyclic_1d,
        jacobi_eigenvalues,
        solve_cyclic_1d,
    )
else:
    from ._kernels_np import (  # noqa: F401
        cg_stencil,
        count_pivots_banded_2d,
        count_pivots_cyclic_1d,
        jacobi_eigenvalues,
        solve_cyclic_1d,
    )
