"""End-to-end pipeline and the fixed on-disk schemas.

Output files (all numbers serialized with round-trip-exact repr):

  curves.csv    energy,n_mean,n_std,nu_mean,nu_std
  constants.csv name,value,reciprocal,err2sigma
  scaling.csv   curve,slope,intercept,r2,c5_eff,c6_eff
  ratio.csv     energy,ratio
  manifest.txt  resolved config (re-parseable) + version/backend comments
  curves.svg, fit.svg, ratio.svg

Writes are atomic (temp file + rename).
"""

import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .backend import backend_name
from .config import effective_workers, config_to_text
from .ensemble import EnsembleCurve, curves_from_realizations, run_realizations, split_error_bars
from .errors import InsufficientDataError, LandscapeLawError, ScalingRegimeError
from .fitting import fit_constants, loglog_interpolate, universal_ratio
from .lattice import DENSE_CAP, LatticeSpec, PotentialDistribution, assemble_dense, make_model
from .scaling import scaling_report
from .spectral import EnergyGrid, count_eigenvalues_below, dense_eigenvalues
from .svg import emit_svg_loglog

log = logging.getLogger(__name__)


def fmt(x):
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


def write_atomic(path, text):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)
    return path


def write_curves_csv(path, n_curve, nu_curve):
    lines = ["energy,n_mean,n_std,nu_mean,nu_std"]
    grid = n_curve.grid.values
    for k in range(grid.size):
        lines.append(
            ",".join(
                fmt(v)
                for v in (grid[k], n_curve.mean[k], n_curve.std[k], nu_curve.mean[k], nu_curve.std[k])
            )
        )
    return write_atomic(path, "\n".join(lines) + "\n")


def read_curves_csv(path):
    rows = Path(path).read_text(encoding="utf-8").strip().splitlines()
    if rows[0] != "energy,n_mean,n_std,nu_mean,nu_std":
        raise LandscapeLawError(f"unexpected curves.csv header: {rows[0]!r}")
    data = np.array([[float(v) for v in row.split(",")] for row in rows[1:]])
    grid = EnergyGrid.from_values(data[:, 0])
    n_curve = EnsembleCurve(grid, data[:, 1], data[:, 2], 0, "idos")
    nu_curve = EnsembleCurve(grid, data[:, 3], data[:, 4], 0, "landscape_law")
    return n_curve, nu_curve


def write_constants_csv(path, report, bars=None):
    bars = bars or {}
    lines = ["name,value,reciprocal,err2sigma"]
    for name in ("c4", "c5", "c5_fit", "c6"):
        value = getattr(report, name)
        err = fmt(bars[name]) if name in bars else "nan"
        lines.append(f"{name},{fmt(value)},{fmt(1.0 / value)},{err}")
    return write_atomic(path, "\n".join(lines) + "\n")


def write_scaling_csv(path, report):
    lines = ["curve,slope,intercept,r2,c5_eff,c6_eff"]
    if report is not None:
        for name, f in (("n", report.fit_n), ("nu", report.fit_nu)):
            lines.append(
                f"{name},{fmt(f.slope)},{fmt(f.intercept)},{fmt(f.r_squared)},"
                f"{fmt(report.c5_eff)},{fmt(report.c6_eff)}"
            )
    return write_atomic(path, "\n".join(lines) + "\n")


def write_ratio_csv(path, ratio):
    lines = ["energy,ratio"]
    for e, r in zip(ratio.energies, ratio.values):
        lines.append(f"{fmt(e)},{fmt(r)}")
    return write_atomic(path, "\n".join(lines) + "\n")


def write_manifest(path, cfg):
    try:
        import numba

        numba_version = numba.__version__
    except ImportError:
        numba_version = "none"
    head = (
        f"# landscapelaw {__version__} manifest\n"
        f"# backend = {backend_name()}\n"
        f"# numpy = {np.__version__}\n"
        f"# numba = {numba_version}\n"
        "# re-run with: landscapelaw run --config <this file>\n"
    )
    return write_atomic(path, head + config_to_text(cfg))


def _dense_oracle_check(model, grid, n_energies=15):
    """Cross-check inertia counts against the Jacobi oracle on one model."""
    w = dense_eigenvalues(assemble_dense(model))
    picks = np.linspace(0, len(grid) - 1, min(n_energies, len(grid))).astype(int)
    for k in picks:
        e = float(grid.values[k])
        if np.any(np.abs(w - e) < 1e-9):
            continue
        inertia = count_eigenvalues_below(model, e)
        oracle = int(np.count_nonzero(w < e))
        if inertia != oracle:
            raise LandscapeLawError(
                f"dense-oracle mismatch at E={e}: inertia {inertia} vs oracle {oracle}"
            )


def _fit_curve_series(grid, nu_curve, c, prefactor=1.0):
    """Evaluate prefactor * N_u(c*E) where interpolable, for charting."""
    es, vs = [], []
    for e in grid.values:
        try:
            v = prefactor * loglog_interpolate(nu_curve, c * float(e))
        except LandscapeLawError:
            continue
        if v > 0:
            es.append(float(e))
            vs.append(v)
    return np.array(es), np.array(vs)


def run_pipeline(cfg, progress=None):
    """Run the full workflow for one configuration; returns output paths."""
    cfg = cfg.resolved()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec = LatticeSpec(cfg.dimension, cfg.side)
    dist = PotentialDistribution(cfg.kind, cfg.vmax)
    grid = cfg.make_grid()
    workers = effective_workers(cfg)

    idos, nu = run_realizations(
        spec, dist, grid, cfg.realizations, cfg.base_seed, workers=workers, progress=progress
    )
    n_curve, nu_curve = curves_from_realizations(grid, idos, nu)

    if cfg.dense_oracle:
        if spec.n_sites <= DENSE_CAP:
            _dense_oracle_check(make_model(spec, dist, cfg.base_seed), grid)
        else:
            log.warning(
                "dense_oracle requested but %d sites exceed the %d cap; skipped",
                spec.n_sites,
                DENSE_CAP,
            )

    scan = (cfg.c6_lo, cfg.c6_hi, cfg.c6_steps)
    report = fit_constants(n_curve, nu_curve, cfg.window_lo, cfg.window_hi, scan)
    bars = None
    if cfg.split_groups > 1:
        bars = split_error_bars(
            idos,
            nu,
            grid,
            cfg.split_groups,
            lambda a, b: fit_constants(a, b, cfg.window_lo, cfg.window_hi, scan),
        )

    ratio = universal_ratio(n_curve, nu_curve, cfg.dimension)

    scal = None
    try:
        scal = scaling_report(n_curve, nu_curve, cfg.kind, cfg.dimension)
    except (InsufficientDataError, ScalingRegimeError) as exc:
        print(f"scaling analysis skipped: {exc}", file=sys.stderr)

    paths = {
        "curves": write_curves_csv(out / "curves.csv", n_curve, nu_curve),
        "constants": write_constants_csv(out / "constants.csv", report, bars),
        "scaling": write_scaling_csv(out / "scaling.csv", scal),
        "ratio": write_ratio_csv(out / "ratio.csv", ratio),
        "manifest": write_manifest(out / "manifest.txt", cfg),
    }
    paths["curves_svg"] = emit_svg_loglog(
        [(grid.values, n_curve.mean), (grid.values, nu_curve.mean)],
        ["N(E)", "N_u(E)"],
        out / "curves.svg",
        title=f"{cfg.kind} {cfg.dimension}D side={cfg.side} ({cfg.realizations} realizations)",
    )
    paths["fit_svg"] = emit_svg_loglog(
        [
            (grid.values, n_curve.mean),
            _fit_curve_series(grid, nu_curve, report.c6, report.c5_fit),
            _fit_curve_series(grid, nu_curve, report.c4),
            _fit_curve_series(grid, nu_curve, report.c6, report.c5),
        ],
        ["N(E)", "c5_fit*Nu(c6 E)", "Nu(c4 E)", "c5*Nu(c6 E)"],
        out / "fit.svg",
        title="counting function vs rescaled landscape law",
    )
    paths["ratio_svg"] = emit_svg_loglog(
        [(ratio.energies, ratio.values)],
        [f"Nu(E/{1 + cfg.dimension / 4})/N(E)"],
        out / "ratio.svg",
        title="universal-shift ratio",
    )
    return paths
