"""Extraction of the landscape-law comparison constants from averaged curves.

All fits work on the ensemble means in log-log space:

  c4     smallest energy-shift factor C with N(E) <= N_u(C E) everywhere in
         the window (i.e. the largest admissible right-shift of N_u);
  c6     shift minimizing the spread of ln(N_u(C E) / N(E)) over the window;
  c5     worst-case prefactor min N(E)/N_u(c6 E), giving a true lower bound;
  c5_fit geometric-mean prefactor, the best single-formula approximation.

Zero mean counts are excluded from every objective, never floored.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InsufficientDataError,
    InvalidArgumentError,
    OutOfRangeError,
    UndefinedRegionError,
    WindowTooWideError,
)

MIN_FIT_POINTS = 5
DEFAULT_C6_SCAN = (0.5, 1.0, 200)


def curve_energies(curve):
    return curve.grid.values


def curve_values(curve):
    """Counts of a SpectralCurve or the mean of an EnsembleCurve."""
    if hasattr(curve, "counts"):
        return curve.counts
    return curve.mean


@dataclass(frozen=True)
class FitWindow:
    """Energy window plus the per-grid-point usability mask (both curves
    positive inside [e_min, e_max])."""

    e_min: float
    e_max: float
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.e_min < self.e_max:
            raise InvalidArgumentError(
                f"window needs e_min < e_max, got [{self.e_min}, {self.e_max}]"
            )
        if not np.any(self.mask):
            raise InsufficientDataError("fit window contains no usable grid points")


def make_window(n_curve, nu_curve, e_min, e_max=None):
    """Build the fit window; e_max defaults to the last energy where both
    curves are still below 1.

    On the lattice the cube side is floored at one site, so N_u pins at 1 for
    E >= max(W) and stops carrying shift information well before N saturates;
    points in that regime would only dilute the ratio fits.
    """
    _check_common_grid(n_curve, nu_curve)
    grid = curve_energies(n_curve)
    n_vals = curve_values(n_curve)
    nu_vals = curve_values(nu_curve)
    if e_max is None:
        below = grid[(n_vals < 1.0) & (nu_vals < 1.0)]
        e_max = float(below[-1]) if below.size else float(grid[-1])
    mask = (grid >= e_min) & (grid <= e_max) & (n_vals > 0.0) & (nu_vals > 0.0)
    return FitWindow(e_min=float(e_min), e_max=float(e_max), mask=mask)


def _loglog_interp(grid, vals, e):
    lo, hi = grid[0], grid[-1]
    if e < lo:
        if e > lo * (1.0 - 1e-12):
            e = lo
        else:
            raise OutOfRangeError(f"E={e!r} below grid start {lo!r}")
    if e > hi:
        if e < hi * (1.0 + 1e-12):
            e = hi
        else:
            raise OutOfRangeError(f"E={e!r} above grid end {hi!r}")
    k = int(np.searchsorted(grid, e))
    if k < grid.size and grid[k] == e:
        return float(vals[k])
    if vals[k - 1] <= 0.0 or vals[k] <= 0.0:
        raise UndefinedRegionError(f"zero count brackets E={e!r}")
    w = (math.log(e) - math.log(grid[k - 1])) / (math.log(grid[k]) - math.log(grid[k - 1]))
    return math.exp((1.0 - w) * math.log(vals[k - 1]) + w * math.log(vals[k]))


def loglog_interpolate(curve, e):
    """Interpolate a counting curve linearly in (ln E, ln value); exact at
    grid points. Scalars in, scalar out; arrays in, array out."""
    grid = curve_energies(curve)
    vals = curve_values(curve)
    if np.ndim(e) == 0:
        return _loglog_interp(grid, vals, float(e))
    return np.array([_loglog_interp(grid, vals, float(x)) for x in np.asarray(e).ravel()])


def _check_common_grid(n_curve, nu_curve):
    if not np.array_equal(curve_energies(n_curve), curve_energies(nu_curve)):
        raise InvalidArgumentError("curves must share one energy grid")


def _invert_monotone(grid, vals, target):
    """Smallest x with vals(x) >= target under log-log interpolation."""
    pos = np.nonzero(vals > 0.0)[0]
    if pos.size == 0 or target > vals[pos[-1]]:
        raise WindowTooWideError(
            f"inversion target {target!r} above the curve's range"
        )
    first = int(pos[0])
    above = np.nonzero(vals[first:] >= target)[0]
    k = first + int(above[0])
    if k == first:
        return float(grid[first])
    lnx = math.log(grid[k - 1]) + (math.log(target) - math.log(vals[k - 1])) * (
        math.log(grid[k]) - math.log(grid[k - 1])
    ) / (math.log(vals[k]) - math.log(vals[k - 1]))
    return math.exp(lnx)


def fit_c4(n_curve, nu_curve, window):
    """Largest right-shift of N_u still upper-bounding N over the window:
    c4 = max over window points of the smallest C with N(E) <= N_u(C E)."""
    _check_common_grid(n_curve, nu_curve)
    grid = curve_energies(n_curve)
    n_vals = curve_values(n_curve)
    nu_vals = curve_values(nu_curve)
    best = 0.0
    for idx in np.nonzero(window.mask)[0]:
        x = _invert_monotone(grid, nu_vals, n_vals[idx])
        best = max(best, x / grid[idx])
    return float(best)


def _log_ratio_samples(n_curve, nu_curve, window, c):
    grid = curve_energies(n_curve)
    n_vals = curve_values(n_curve)
    nu_vals = curve_values(nu_curve)
    out = []
    for idx in np.nonzero(window.mask)[0]:
        try:
            v = _loglog_interp(grid, nu_vals, c * grid[idx])
        except (OutOfRangeError, UndefinedRegionError):
            continue
        if v > 0.0:
            out.append(math.log(v) - math.log(n_vals[idx]))
    return out


def fit_c6(n_curve, nu_curve, window, scan=DEFAULT_C6_SCAN):
    """Shift making N_u(C E)/N(E) as constant as possible: argmin over the
    scanned C of the standard deviation of ln(N_u(C E)/N(E)).

    Dense scan plus one local refinement pass around the coarse minimum.
    """
    _check_common_grid(n_curve, nu_curve)
    c_lo, c_hi, steps = scan
    if not (0.0 < c_lo < c_hi) or steps < 3:
        raise InvalidArgumentError(f"bad c6 scan {scan!r}")

    def objective(c):
        samples = _log_ratio_samples(n_curve, nu_curve, window, c)
        if len(samples) < MIN_FIT_POINTS:
            return None
        return float(np.std(samples))

    def best_of(cs):
        best_c, best_sigma = None, None
        for c in cs:
            sigma = objective(float(c))
            if sigma is not None and (best_sigma is None or sigma < best_sigma):
                best_c, best_sigma = float(c), sigma
        return best_c, best_sigma

    coarse = np.linspace(c_lo, c_hi, steps)
    c_best, sigma_best = best_of(coarse)
    if c_best is None:
        raise InsufficientDataError(
            f"fewer than {MIN_FIT_POINTS} usable points for every scanned C"
        )
    k = int(np.argmin(np.abs(coarse - c_best)))
    fine = np.linspace(coarse[max(k - 1, 0)], coarse[min(k + 1, steps - 1)], steps)
    c_fine, sigma_fine = best_of(fine)
    if c_fine is not None and sigma_fine < sigma_best:
        return c_fine
    return c_best


def fit_c5(n_curve, nu_curve, c6, window):
    """Prefactors at the fitted shift: the window minimum of N(E)/N_u(c6 E)
    (a true lower bound) and the geometric mean (the best single fit)."""
    _check_common_grid(n_curve, nu_curve)
    grid = curve_energies(n_curve)
    n_vals = curve_values(n_curve)
    nu_vals = curve_values(nu_curve)
    log_ratios = []
    for idx in np.nonzero(window.mask)[0]:
        try:
            v = _loglog_interp(grid, nu_vals, c6 * grid[idx])
        except (OutOfRangeError, UndefinedRegionError):
            continue
        if v > 0.0:
            log_ratios.append(math.log(n_vals[idx]) - math.log(v))
    if len(log_ratios) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {len(log_ratios)} usable points for the prefactor fit"
        )
    c5 = math.exp(min(log_ratios))
    c5_fit = math.exp(float(np.mean(log_ratios)))
    return c5, c5_fit


@dataclass(frozen=True)
class ConstantsReport:
    """Fitted comparison constants with optional split-sample 2-sigma bars on
    the reciprocals."""

    c4: float
    c5: float
    c5_fit: float
    c6: float
    window: FitWindow
    error_bars: dict | None = None

    @property
    def reciprocals(self):
        return {
            "c4": 1.0 / self.c4,
            "c5": 1.0 / self.c5,
            "c5_fit": 1.0 / self.c5_fit,
            "c6": 1.0 / self.c6,
        }


def fit_constants(n_curve, nu_curve, e_min, e_max=None, scan=DEFAULT_C6_SCAN):
    """Full constants pipeline on one pair of averaged curves."""
    window = make_window(n_curve, nu_curve, e_min, e_max)
    c6 = fit_c6(n_curve, nu_curve, window, scan)
    c4 = fit_c4(n_curve, nu_curve, window)
    c5, c5_fit = fit_c5(n_curve, nu_curve, c6, window)
    return ConstantsReport(c4=c4, c5=c5, c5_fit=c5_fit, c6=c6, window=window)


@dataclass(frozen=True)
class RatioCurve:
    energies: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)


def universal_ratio(n_curve, nu_curve, d):
    """Parameter-free diagnostic N_u(E / (1 + d/4)) / N(E) over every grid
    point where both factors are defined."""
    _check_common_grid(n_curve, nu_curve)
    shift = 1.0 + d / 4.0
    grid = curve_energies(n_curve)
    n_vals = curve_values(n_curve)
    nu_vals = curve_values(nu_curve)
    es, rs = [], []
    for idx in range(grid.size):
        if n_vals[idx] <= 0.0:
            continue
        try:
            v = _loglog_interp(grid, nu_vals, grid[idx] / shift)
        except (OutOfRangeError, UndefinedRegionError):
            continue
        if v > 0.0:
            es.append(float(grid[idx]))
            rs.append(v / float(n_vals[idx]))
    return RatioCurve(energies=np.array(es), values=np.array(rs))
