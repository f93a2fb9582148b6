"""Low-energy scaling analysis.

Near the spectrum floor, ln(N(E) E^{-d/2}) is affine in E^{d/2} for binary
disorder and in E^{d/2}/|ln E| for uniform disorder. Transforming a curve into
that plane and fitting one straight line per curve yields (slope, intercept)
pairs; matching the scaling forms of N and N_u gives effective prefactor and
shift constants:

    c6_eff = (b_nu / b_n)^{2/d}
    c5_eff = exp(a_n - a_nu) * (b_n / b_nu)

with a the slope and b the (negative) intercept of each fitted line.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidArgumentError, ScalingRegimeError
from .fitting import curve_energies, curve_values

TRANSFORM_KINDS = ("binary", "uniform")
MIN_WINDOW_POINTS = 5


def transform_curve(curve, kind, d, window):
    """Map (E, N) points inside window (a (lo, hi) pair within (0, 1)) to the
    affine-scaling plane; zero counts are skipped."""
    if kind not in TRANSFORM_KINDS:
        raise InvalidArgumentError(f"kind must be one of {TRANSFORM_KINDS}, got {kind!r}")
    lo, hi = float(window[0]), float(window[1])
    if not (0.0 < lo < hi <= 1.0):
        raise InvalidArgumentError(f"window must sit inside (0, 1], got [{lo}, {hi}]")
    energies = curve_energies(curve)
    values = curve_values(curve)
    sel = (energies >= lo) & (energies <= hi) & (energies < 1.0) & (values > 0.0)
    if not np.any(sel):
        raise InsufficientDataError("no positive counts inside the scaling window")
    e = energies[sel]
    half = d / 2.0
    ln_reduced = np.log(values[sel]) - half * np.log(e)
    x = e**half
    if kind == "uniform":
        x = x / np.abs(np.log(e))
    return x, x * ln_reduced


@dataclass(frozen=True)
class AffineFit:
    slope: float
    intercept: float
    r_squared: float


def fit_affine(x, y):
    """Ordinary least squares y = slope*x + intercept with R^2."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 3:
        raise InsufficientDataError(f"affine fit needs >= 3 points, got {x.size}")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) @ (y - y.mean())))
    if ss_tot > 0.0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res <= 1e-24 else 0.0
    return AffineFit(slope=float(slope), intercept=float(intercept), r_squared=r2)


def effective_constants(fit_n, fit_nu, d):
    """Effective (c5, c6) from the fitted lines of N and N_u (accepts
    AffineFit objects or (slope, intercept) pairs). Both intercepts must be
    negative: counting functions decay super-polynomially at the bottom."""
    a_n, b_n = (fit_n.slope, fit_n.intercept) if hasattr(fit_n, "slope") else fit_n[:2]
    a_nu, b_nu = (fit_nu.slope, fit_nu.intercept) if hasattr(fit_nu, "slope") else fit_nu[:2]
    if not (b_n < 0.0 and b_nu < 0.0):
        raise ScalingRegimeError(
            f"intercepts must be negative in the scaling regime, got {b_n} and {b_nu}"
        )
    c6_eff = (b_nu / b_n) ** (2.0 / d)
    c5_eff = np.exp(a_n - a_nu) * (b_n / b_nu)
    return float(c5_eff), float(c6_eff)


def low_energy_window(curve):
    """Lowest fully resolved decade inside (0, 1): every grid point in
    [e, 10e] carries a nonzero mean count. Falls back to all usable sub-1
    points when no decade qualifies (tiny smoke runs)."""
    energies = curve_energies(curve)
    values = curve_values(curve)
    for e in energies:
        hi = 10.0 * e
        if hi > 1.0:
            break
        sel = (energies >= e) & (energies <= hi)
        if sel.sum() >= MIN_WINDOW_POINTS and np.all(values[sel] > 0.0):
            return float(e), float(hi)
    usable = (energies < 1.0) & (values > 0.0)
    if usable.sum() >= 3:
        picked = energies[usable]
        return float(picked[0]), float(min(picked[-1], np.nextafter(1.0, 0.0)))
    raise InsufficientDataError("no usable low-energy window below E = 1")


@dataclass(frozen=True)
class ScalingReport:
    """Per-curve affine fits in the scaling plane plus the effective constants
    derived from them."""

    fit_n: AffineFit
    fit_nu: AffineFit
    c5_eff: float
    c6_eff: float
    window: tuple


def scaling_report(n_curve, nu_curve, kind, d, window=None):
    """Transform both curves, fit one central line each, derive effective
    constants. The window defaults to the lowest usable decade of N."""
    if window is None:
        window = low_energy_window(n_curve)
    fit_n = fit_affine(*transform_curve(n_curve, kind, d, window))
    fit_nu = fit_affine(*transform_curve(nu_curve, kind, d, window))
    c5_eff, c6_eff = effective_constants(fit_n, fit_nu, d)
    return ScalingReport(fit_n=fit_n, fit_nu=fit_nu, c5_eff=c5_eff, c6_eff=c6_eff, window=(float(window[0]), float(window[1])))
