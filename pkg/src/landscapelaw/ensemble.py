"""Seeded disorder ensembles: run realizations on a thread pool, average the
two counting curves, and derive split-sample error bars.

Realization k always uses seed base_seed + k and results are reduced in
realization order, so means are bit-identical across runs and worker counts.
The counting kernels release the GIL, which is what makes threads effective.
"""

import logging
import os
from concurrent.futures import FIRST_EXCEPTION, ThreadPoolExecutor, wait
from dataclasses import dataclass, field

import numpy as np

from .errors import EnsembleError, InvalidArgumentError
from .landscape import DEFAULT_TOL, solve_landscape
from .lattice import LatticeModel, sample_potential
from .nu_counting import landscape_law_value
from .spectral import count_eigenvalues_below

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnsembleCurve:
    """Per-energy mean and population standard deviation over realizations."""

    grid: object
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)
    n_realizations: int = 0
    kind: str = "idos"

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        std = np.asarray(self.std, dtype=np.float64)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)
        if mean.shape != (len(self.grid),) or std.shape != mean.shape:
            raise InvalidArgumentError("mean/std must match the grid length")
        if mean.min(initial=0.0) < 0.0 or mean.max(initial=0.0) > 1.0 + 1e-12:
            raise InvalidArgumentError("mean counts must lie in [0, 1]")
        if std.min(initial=0.0) < 0.0:
            raise InvalidArgumentError("std must be >= 0")
        drops = np.diff(mean) < 0.0
        if np.any(drops):
            if self.kind == "idos":
                raise InvalidArgumentError("mean idos must be non-decreasing")
            log.warning(
                "mean landscape_law curve decreases at %d grid point(s)", int(drops.sum())
            )


def default_workers():
    return max(os.cpu_count() or 1, 1)


def _realization_curves(spec, dist, seed, grid, tol, potential_offset, which):
    pot = sample_potential(spec, dist, seed)
    if potential_offset:
        pot = pot + potential_offset
    model = LatticeModel(spec=spec, potential=pot, seed=seed)
    n = spec.n_sites
    idos = nu = None
    if which in ("both", "idos"):
        idos = np.empty(len(grid))
        for k, e in enumerate(grid.values):
            idos[k] = count_eigenvalues_below(model, float(e)) / n
    if which in ("both", "nu"):
        land = solve_landscape(model, tol=tol)
        nu = np.empty(len(grid))
        for k, e in enumerate(grid.values):
            nu[k] = landscape_law_value(land.w, spec, float(e))
    return idos, nu


def run_realizations(
    spec,
    dist,
    grid,
    n,
    base_seed,
    workers=None,
    tol=DEFAULT_TOL,
    potential_offset=0.0,
    progress=None,
    which="both",
):
    """Per-realization curves, shape (n, len(grid)) for N and N_u.

    which selects "both" (default), "idos" or "nu" alone; the skipped curve
    comes back as None. potential_offset adds a constant to every sampled
    potential; it exists for degenerate-ensemble tests (e.g. v_max = 0 plus an
    offset gives identical realizations).
    """
    if n < 1:
        raise InvalidArgumentError(f"need at least 1 realization, got {n}")
    if which not in ("both", "idos", "nu"):
        raise InvalidArgumentError(f"which must be both/idos/nu, got {which!r}")
    workers = default_workers() if workers is None else max(int(workers), 1)
    idos = np.empty((n, len(grid))) if which in ("both", "idos") else None
    nu = np.empty((n, len(grid))) if which in ("both", "nu") else None

    def job(k):
        return k, _realization_curves(
            spec, dist, base_seed + k, grid, tol, potential_offset, which
        )

    done = 0
    with ThreadPoolExecutor(max_workers=workers) as ex:
        index_of = {ex.submit(job, k): k for k in range(n)}
        pending = set(index_of)
        while pending:
            finished, pending = wait(pending, return_when=FIRST_EXCEPTION)
            for fut in finished:
                k = index_of[fut]
                try:
                    _, (row_n, row_nu) = fut.result()
                except Exception as exc:
                    ex.shutdown(wait=False, cancel_futures=True)
                    raise EnsembleError(
                        f"realization {k} (seed {base_seed + k}) failed",
                        realization=k,
                    ) from exc
                if idos is not None:
                    idos[k] = row_n
                if nu is not None:
                    nu[k] = row_nu
                done += 1
                if progress is not None:
                    progress(done, n)
    return idos, nu


def curves_from_realizations(grid, idos, nu):
    """Reduce per-realization curves to ensemble means/population stds."""
    n = idos.shape[0]
    return (
        EnsembleCurve(grid, idos.mean(axis=0), idos.std(axis=0), n, "idos"),
        EnsembleCurve(grid, nu.mean(axis=0), nu.std(axis=0), n, "landscape_law"),
    )


def run_ensemble(
    spec,
    dist,
    grid,
    n,
    base_seed,
    workers=None,
    tol=DEFAULT_TOL,
    potential_offset=0.0,
    progress=None,
):
    """Averaged N and N_u curves over n seeded realizations."""
    idos, nu = run_realizations(
        spec, dist, grid, n, base_seed, workers, tol, potential_offset, progress
    )
    return curves_from_realizations(grid, idos, nu)


def split_error_bars(idos, nu, grid, m, fit):
    """2-sigma spreads of the reciprocal constants across m disjoint groups.

    Splits the realizations into m contiguous index blocks, averages each
    block, runs the full constants fit per block, and reports twice the sample
    standard deviation of 1/C across blocks for each constant.
    """
    n = idos.shape[0]
    if m < 2:
        raise InvalidArgumentError(f"need at least 2 groups, got {m}")
    if n % m != 0:
        raise InvalidArgumentError(f"group count {m} must divide {n} realizations")
    gs = n // m
    recs = {"c4": [], "c5": [], "c5_fit": [], "c6": []}
    for g in range(m):
        block = slice(g * gs, (g + 1) * gs)
        mean_n, mean_nu = curves_from_realizations(grid, idos[block], nu[block])
        report = fit(mean_n, mean_nu)
        recs["c4"].append(1.0 / report.c4)
        recs["c5"].append(1.0 / report.c5)
        recs["c5_fit"].append(1.0 / report.c5_fit)
        recs["c6"].append(1.0 / report.c6)
    return {name: 2.0 * float(np.std(vals, ddof=1)) for name, vals in recs.items()}
