#!/usr/bin/env python3
"""Time the numba kernel lane against the pure numpy/python fallback.

Run: python benchmarks/bench_backends.py
"""

import time

import numpy as np

from landscapelaw import _kernels_nb as nb_lane
from landscapelaw import _kernels_np as np_lane
from landscapelaw.lattice import LatticeSpec, PotentialDistribution, sample_potential


def timeit(fn, *args, repeat=3):
    best = np.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, fn_nb, fn_np, args, check=None):
    fn_nb(*args)  # compile outside the timing
    t_nb, r_nb = timeit(fn_nb, *args)
    t_np, r_np = timeit(fn_np, *args)
    if check is not None:
        check(r_nb, r_np)
    print(f"{name:34s} numba {t_nb * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms   "
          f"speedup {t_np / t_nb:7.1f}x")


def same_count(a, b):
    assert a[0] == b[0] and a[1] == b[1], (a, b)


def main():
    rng = np.random.default_rng(0)

    v1 = sample_potential(LatticeSpec(1, 100_000), PotentialDistribution("binary", 1.0), 7)
    diag1 = v1 + 2.0 - 0.5
    bench("1D cyclic inertia (L=1e5)",
          nb_lane.count_pivots_cyclic_1d, np_lane.count_pivots_cyclic_1d,
          (diag1, 1e-12 * 5.0), check=same_count)

    rhs = np.ones(v1.size)
    bench("1D cyclic solve (L=1e5)",
          nb_lane.solve_cyclic_1d, np_lane.solve_cyclic_1d,
          (v1 + 2.0, rhs),
          check=lambda a, b: np.testing.assert_allclose(a[0], b[0], rtol=1e-10))

    L = 60
    v2 = sample_potential(LatticeSpec(2, L), PotentialDistribution("binary", 1.0), 7)
    diag2 = v2 + 4.0 - 1.3
    bench(f"2D band+border inertia (L={L})",
          nb_lane.count_pivots_banded_2d, np_lane.count_pivots_banded_2d,
          (diag2, L, 1e-12 * 9.0), check=same_count)

    bench(f"2D landscape CG (L={L})",
          nb_lane.cg_stencil, np_lane.cg_stencil,
          (v2, L, 2, 1e-10, 50 * L),
          check=lambda a, b: np.testing.assert_allclose(a[0], b[0], atol=1e-8))

    a = rng.normal(size=(160, 160))
    a = (a + a.T) / 2.0
    bench("Jacobi eigenvalues (n=160)",
          nb_lane.jacobi_eigenvalues, np_lane.jacobi_eigenvalues,
          (a, 100),
          check=lambda x, y: np.testing.assert_allclose(x[0], y[0], atol=1e-9))


if __name__ == "__main__":
    main()
