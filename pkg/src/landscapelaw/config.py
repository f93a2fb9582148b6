"""Run configuration: plain key = value text, '#' comments, unknown keys
rejected. Every run writes the fully resolved configuration back into its
manifest, so a manifest is itself a valid config reproducing the run."""

import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigError
from .spectral import EnergyGrid

GRID_MARGIN = 1.0


@dataclass(frozen=True)
class RunConfig:
    dimension: int = 1
    side: int = 1000
    kind: str = "binary"
    vmax: float = 1.0
    realizations: int = 100
    base_seed: int = 0
    grid_lo: float = 0.01
    grid_hi: float | None = None
    grid_points: int = 200
    grid_spacing: str = "log"
    window_lo: float | None = None
    window_hi: float | None = None
    c6_lo: float = 0.5
    c6_hi: float = 1.0
    c6_steps: int = 200
    split_groups: int = 0
    out_dir: str = "out"
    dense_oracle: bool = False
    workers: int | None = None

    @property
    def spectrum_top(self):
        return self.vmax + 4.0 * self.dimension

    def resolved(self):
        """Fill the static defaults that depend on other fields."""
        cfg = self
        if cfg.grid_hi is None:
            cfg = replace(cfg, grid_hi=cfg.spectrum_top)
        if cfg.window_lo is None:
            cfg = replace(cfg, window_lo=0.02 if cfg.dimension == 1 else 0.2)
        return cfg

    def make_grid(self):
        cfg = self.resolved()
        if cfg.grid_spacing == "log":
            return EnergyGrid.log_spaced(cfg.grid_lo, cfg.grid_hi, cfg.grid_points)
        return EnergyGrid.linear_spaced(cfg.grid_lo, cfg.grid_hi, cfg.grid_points)


_FIELD_NAMES = {f.name for f in fields(RunConfig)}
_INT_KEYS = {"dimension", "side", "realizations", "base_seed", "grid_points", "c6_steps", "split_groups"}
_FLOAT_KEYS = {"vmax", "grid_lo", "grid_hi", "window_lo", "window_hi", "c6_lo", "c6_hi"}
_OPTIONAL_KEYS = {"grid_hi", "window_lo", "window_hi", "workers"}
_BOOL_KEYS = {"dense_oracle"}


def _parse_value(key, raw, line_no):
    if key in _OPTIONAL_KEYS and raw.lower() == "auto":
        return None
    try:
        if key in _INT_KEYS or key == "workers":
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _BOOL_KEYS:
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return raw
    except ValueError:
        raise ConfigError(f"cannot parse value {raw!r} for key {key!r}", line=line_no) from None


def validate_config(cfg, key_lines=None):
    """Raise ConfigError on any violated invariant, citing the source line of
    the offending key when known."""
    key_lines = key_lines or {}

    def bad(msg, *keys):
        line = next((key_lines[k] for k in keys if k in key_lines), None)
        raise ConfigError(msg, line=line)

    if cfg.dimension not in (1, 2):
        bad(f"dimension must be 1 or 2, got {cfg.dimension}", "dimension")
    if cfg.side < 3:
        bad(f"side must be >= 3, got {cfg.side}", "side")
    if cfg.kind not in ("binary", "uniform"):
        bad(f"kind must be binary or uniform, got {cfg.kind!r}", "kind")
    if not cfg.vmax >= 0:
        bad(f"vmax must be >= 0, got {cfg.vmax}", "vmax")
    if cfg.realizations < 1:
        bad(f"realizations must be >= 1, got {cfg.realizations}", "realizations")
    if not cfg.grid_lo > 0:
        bad(f"grid_lo must be > 0, got {cfg.grid_lo}", "grid_lo")
    if cfg.grid_points < 2:
        bad(f"grid_points must be >= 2, got {cfg.grid_points}", "grid_points")
    if cfg.grid_spacing not in ("log", "linear"):
        bad(f"grid_spacing must be log or linear, got {cfg.grid_spacing!r}", "grid_spacing")
    if cfg.grid_hi is not None:
        if not cfg.grid_hi > cfg.grid_lo:
            bad(f"grid_hi must exceed grid_lo, got {cfg.grid_hi} <= {cfg.grid_lo}", "grid_hi", "grid_lo")
        if cfg.grid_hi > cfg.spectrum_top + GRID_MARGIN:
            bad(
                f"grid_hi {cfg.grid_hi} exceeds the spectrum ceiling "
                f"{cfg.spectrum_top} + margin {GRID_MARGIN}",
                "grid_hi",
            )
    if cfg.window_lo is not None and not cfg.window_lo > 0:
        bad(f"window_lo must be > 0, got {cfg.window_lo}", "window_lo")
    if (
        cfg.window_lo is not None
        and cfg.window_hi is not None
        and not cfg.window_hi > cfg.window_lo
    ):
        bad(f"window_hi must exceed window_lo, got {cfg.window_hi} <= {cfg.window_lo}", "window_hi")
    if not (0 < cfg.c6_lo < cfg.c6_hi):
        bad(f"need 0 < c6_lo < c6_hi, got {cfg.c6_lo}, {cfg.c6_hi}", "c6_lo", "c6_hi")
    if cfg.c6_steps < 3:
        bad(f"c6_steps must be >= 3, got {cfg.c6_steps}", "c6_steps")
    if cfg.split_groups < 0:
        bad(f"split_groups must be >= 0, got {cfg.split_groups}", "split_groups")
    if cfg.split_groups == 1:
        bad("split_groups needs at least 2 groups (or 0 to disable error bars)", "split_groups")
    if cfg.split_groups > 1 and cfg.realizations % cfg.split_groups != 0:
        bad(
            f"split_groups {cfg.split_groups} must divide realizations {cfg.realizations}",
            "split_groups",
        )
    if cfg.workers is not None and cfg.workers < 1:
        bad(f"workers must be >= 1, got {cfg.workers}", "workers")
    return cfg


def parse_config(text):
    """Parse key = value lines into a validated RunConfig."""
    values = {}
    key_lines = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw_line.strip()!r}", line=line_no)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown key {key!r}", line=line_no)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", line=line_no)
        values[key] = _parse_value(key, raw, line_no)
        key_lines[key] = line_no
    return validate_config(RunConfig(**values), key_lines)


def config_to_text(cfg):
    """Serialize with every field explicit; 'auto' marks run-time defaults."""
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if value is None:
            value = "auto"
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def effective_workers(cfg):
    """Worker count with the environment override applied."""
    env = os.environ.get("LANDSCAPELAW_WORKERS")
    if env:
        try:
            w = int(env)
        except ValueError:
            raise ConfigError(f"LANDSCAPELAW_WORKERS must be an integer, got {env!r}") from None
        if w < 1:
            raise ConfigError(f"LANDSCAPELAW_WORKERS must be >= 1, got {w}")
        return w
    if cfg.workers is not None:
        return cfg.workers
    return max(os.cpu_count() or 1, 1)
