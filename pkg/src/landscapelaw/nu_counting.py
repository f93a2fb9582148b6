"""Landscape-law counting function N_u.

For an energy E the domain is partitioned into disjoint cubes of side
round(1/sqrt(E)) sites (floored at one site, remainder strip dropped), and
N_u(E) is the number of cubes whose minimum of W = 1/u is <= E, divided by the
total site count. Cube minima are per-axis block reductions, O(n_sites) per
energy; a direct scan over all cubes is kept as the oracle.
"""

import numpy as np

from .errors import InvalidArgumentError
from .spectral import SpectralCurve


def cube_side(energy):
    """Cube side in sites: round(E^{-1/2}) half away from zero, at least 1."""
    if not energy > 0.0:
        raise InvalidArgumentError(f"energy must be > 0, got {energy}")
    return max(1, int(np.floor(energy**-0.5 + 0.5)))


def _block_minima(w, side, s):
    """Minima of W over the disjoint s-cubes (remainder strip dropped)."""
    m = side // s
    if w.ndim == 1:
        return w[: m * s].reshape(m, s).min(axis=1)
    trimmed = w[: m * s, : m * s]
    cols = trimmed.reshape(m * s, m, s).min(axis=2)  # pass 1: along x
    return cols.reshape(m, s, m).min(axis=1)  # pass 2: along y


def landscape_law_value(w, spec, energy):
    """Per-site count of qualifying cubes at one energy."""
    s = cube_side(energy)
    shape = (spec.side,) if spec.dimension == 1 else (spec.side, spec.side)
    minima = _block_minima(np.asarray(w).reshape(shape), spec.side, s)
    return float(np.count_nonzero(minima <= energy)) / spec.n_sites


def landscape_law_value_bruteforce(w, spec, energy):
    """Oracle: direct scan over every cube."""
    s = cube_side(energy)
    L = spec.side
    m = L // s
    count = 0
    if spec.dimension == 1:
        for c in range(m):
            if w[c * s : (c + 1) * s].min() <= energy:
                count += 1
    else:
        w2 = np.asarray(w).reshape(L, L)
        for cy in range(m):
            for cx in range(m):
                block = w2[cy * s : (cy + 1) * s, cx * s : (cx + 1) * s]
                if block.min() <= energy:
                    count += 1
    return float(count) / spec.n_sites


def landscape_law_curve(land, spec, grid):
    """N_u sampled on the grid."""
    values = np.empty(len(grid))
    for k, e in enumerate(grid.values):
        values[k] = landscape_law_value(land.w, spec, float(e))
    return SpectralCurve(grid=grid, counts=values, kind="landscape_law")
