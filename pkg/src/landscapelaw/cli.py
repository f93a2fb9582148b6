"""Command-line interface.

Subcommands: run (full pipeline), idos / nu (one ensemble curve each),
landscape (dump u and W for one realization), fit / scaling / ratio
(post-processing of a previously written curves.csv).

Exit codes: 0 ok, 1 usage or config error, 2 numerical failure, 3 I/O error.
"""

import argparse
import sys
from dataclasses import fields, replace
from pathlib import Path

from .config import RunConfig, _parse_value, effective_workers, parse_config, validate_config
from .ensemble import EnsembleCurve, run_realizations
from .errors import ConfigError, LandscapeLawError
from .fitting import fit_constants, universal_ratio
from .landscape import solve_landscape
from .lattice import LatticeSpec, PotentialDistribution, make_model
from .pipeline import (
    fmt,
    read_curves_csv,
    run_pipeline,
    write_atomic,
    write_constants_csv,
    write_ratio_csv,
    write_scaling_csv,
)
from .scaling import scaling_report
from .svg import emit_svg_loglog

_CONFIG_FLAGS = [f.name for f in fields(RunConfig)]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="landscapelaw",
        description="IDOS of Anderson tight-binding models, exact and via the landscape law",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("run", "full pipeline: ensemble, constants, scaling, ratio, charts"),
        ("idos", "ensemble-averaged exact IDOS only, written to idos.csv"),
        ("nu", "ensemble-averaged landscape law only, written to nu.csv"),
        ("landscape", "solve one realization and dump u, W to landscape.csv"),
        ("fit", "constants from an existing curves.csv"),
        ("scaling", "low-energy scaling fits from an existing curves.csv"),
        ("ratio", "universal-shift ratio from an existing curves.csv"),
    ):
        p = sub.add_parser(name, help=desc)
        p.add_argument("--config", type=Path, help="key = value config file")
        for key in _CONFIG_FLAGS:
            flag = "--" + key.replace("_", "-")
            if key == "dense_oracle":
                p.add_argument(flag, dest=key, action=argparse.BooleanOptionalAction, default=None)
            else:
                p.add_argument(flag, dest=key, default=None)
        if name in ("fit", "scaling", "ratio"):
            p.add_argument("--curves", type=Path, default=None, help="path to curves.csv")
    return parser


def _coerce(key, value):
    if isinstance(value, (bool, int, float)):
        return value
    return _parse_value(key, str(value), None)


def load_config(args):
    if args.config is not None:
        cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    else:
        cfg = RunConfig()
    overrides = {}
    for key in _CONFIG_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = _coerce(key, value)
    if overrides:
        cfg = validate_config(replace(cfg, **overrides))
    return cfg


def _progress(done, total):
    print(f"\r{done}/{total} realizations", end="", file=sys.stderr, flush=True)
    if done == total:
        print(file=sys.stderr)


def _single_curve(cfg, which):
    spec = LatticeSpec(cfg.dimension, cfg.side)
    dist = PotentialDistribution(cfg.kind, cfg.vmax)
    grid = cfg.make_grid()
    idos, nu = run_realizations(
        spec,
        dist,
        grid,
        cfg.realizations,
        cfg.base_seed,
        workers=effective_workers(cfg),
        progress=_progress,
        which=which,
    )
    rows = idos if which == "idos" else nu
    kind = "idos" if which == "idos" else "landscape_law"
    curve = EnsembleCurve(grid, rows.mean(axis=0), rows.std(axis=0), rows.shape[0], kind)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["energy,mean,std"]
    for k in range(len(grid)):
        lines.append(f"{fmt(grid.values[k])},{fmt(curve.mean[k])},{fmt(curve.std[k])}")
    path = out / f"{which}.csv"
    write_atomic(path, "\n".join(lines) + "\n")
    print(path)
    return 0


def _dump_landscape(cfg):
    spec = LatticeSpec(cfg.dimension, cfg.side)
    model = make_model(spec, PotentialDistribution(cfg.kind, cfg.vmax), cfg.base_seed)
    land = solve_landscape(model)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.dimension == 1:
        lines = ["site,u,w"]
        for i in range(spec.n_sites):
            lines.append(f"{i},{fmt(land.u[i])},{fmt(land.w[i])}")
    else:
        lines = ["x,y,u,w"]
        for i in range(spec.n_sites):
            lines.append(
                f"{i % cfg.side},{i // cfg.side},{fmt(land.u[i])},{fmt(land.w[i])}"
            )
    path = out / "landscape.csv"
    write_atomic(path, "\n".join(lines) + "\n")
    print(path)
    return 0


def _post_process(cfg, args, what):
    out = Path(cfg.out_dir)
    curves_path = args.curves if args.curves is not None else out / "curves.csv"
    n_curve, nu_curve = read_curves_csv(curves_path)
    out.mkdir(parents=True, exist_ok=True)
    if what == "fit":
        report = fit_constants(
            n_curve, nu_curve, cfg.resolved().window_lo, cfg.window_hi,
            (cfg.c6_lo, cfg.c6_hi, cfg.c6_steps),
        )
        path = write_constants_csv(out / "constants.csv", report)
        for name, value in report.reciprocals.items():
            print(f"1/{name} = {value:.4g}")
    elif what == "scaling":
        report = scaling_report(n_curve, nu_curve, cfg.kind, cfg.dimension)
        path = write_scaling_csv(out / "scaling.csv", report)
        print(f"1/c6_eff = {1 / report.c6_eff:.4g}, 1/c5_eff = {1 / report.c5_eff:.4g}")
    else:
        ratio = universal_ratio(n_curve, nu_curve, cfg.dimension)
        path = write_ratio_csv(out / "ratio.csv", ratio)
        emit_svg_loglog(
            [(ratio.energies, ratio.values)],
            [f"Nu(E/{1 + cfg.dimension / 4})/N(E)"],
            out / "ratio.svg",
            title="universal-shift ratio",
        )
    print(path)
    return 0


def dispatch(args):
    cfg = load_config(args)
    if args.command == "run":
        paths = run_pipeline(cfg, progress=_progress)
        for p in paths.values():
            print(p)
        return 0
    if args.command in ("idos", "nu"):
        return _single_curve(cfg, args.command)
    if args.command == "landscape":
        return _dump_landscape(cfg)
    return _post_process(cfg, args, args.command)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except LandscapeLawError as exc:
        chain = [str(exc)]
        cause = exc.__cause__
        while cause is not None:
            chain.append(str(cause))
            cause = cause.__cause__
        print("numerical failure: " + " <- ".join(chain), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
