"""Anderson tight-binding models on periodic chains and square lattices.

The Hamiltonian acts as (H psi)_i = (V_i + 2d) psi_i - sum_{j~i} psi_j with
nearest-neighbor hopping t = 1 and the diagonal uplifted by 2d so the spectrum
starts at 0 and lies in [0, V_max + 4d]. The matrix is never stored in the hot
path; counting and solving kernels generate the stencil structure on the fly.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, SizeLimitError

DENSE_CAP = 4096


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry of a periodic lattice: dimension (1 or 2) and side length."""

    dimension: int
    side: int

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise InvalidArgumentError(f"dimension must be 1 or 2, got {self.dimension}")
        if self.side < 3:
            raise InvalidArgumentError(f"side must be >= 3, got {self.side}")

    @property
    def hopping(self):
        return 1.0

    @property
    def uplift(self):
        """Diagonal shift 2d that pins the spectrum floor at zero."""
        return 2.0 * self.dimension

    @property
    def n_sites(self):
        return self.side**self.dimension


@dataclass(frozen=True)
class PotentialDistribution:
    """On-site disorder law: binary draws {0, v_max} with equal probability,
    uniform draws [0, v_max)."""

    kind: str
    v_max: float

    def __post_init__(self):
        if self.kind not in ("binary", "uniform"):
            raise InvalidArgumentError(f"kind must be 'binary' or 'uniform', got {self.kind!r}")
        if not self.v_max >= 0.0:
            raise InvalidArgumentError(f"v_max must be >= 0, got {self.v_max}")

    def cdf(self, e):
        """Closed-form cumulative distribution of a single site value."""
        e = np.asarray(e, dtype=float)
        if self.v_max == 0.0:
            return np.where(e >= 0.0, 1.0, 0.0)
        if self.kind == "binary":
            return np.where(e < 0.0, 0.0, np.where(e < self.v_max, 0.5, 1.0))
        return np.clip(e / self.v_max, 0.0, 1.0)


def sample_potential(spec, dist, seed):
    """Draw the i.i.d. on-site potential for one realization.

    Deterministic given (spec, dist, seed): the stream is Philox keyed by the
    seed (masked to 64 bits), so results are identical across platforms and
    worker counts.
    """
    rng = np.random.Generator(np.random.Philox(key=seed & 0xFFFFFFFFFFFFFFFF))
    n = spec.n_sites
    if dist.kind == "binary":
        return rng.integers(0, 2, size=n).astype(np.float64) * dist.v_max
    return rng.random(n) * dist.v_max


@dataclass(frozen=True)
class LatticeModel:
    """One disorder realization: a spec plus its sampled potential."""

    spec: LatticeSpec
    potential: np.ndarray = field(repr=False)
    seed: int = 0

    def __post_init__(self):
        pot = np.asarray(self.potential, dtype=np.float64)
        object.__setattr__(self, "potential", pot)
        if pot.shape != (self.spec.n_sites,):
            raise InvalidArgumentError(
                f"potential must have length {self.spec.n_sites}, got shape {pot.shape}"
            )
        if not np.all(np.isfinite(pot)) or np.any(pot < 0.0):
            raise InvalidArgumentError("potential entries must be finite and >= 0")

    @property
    def n_sites(self):
        return self.spec.n_sites

    @property
    def spectrum_ceiling(self):
        """Upper Gershgorin bound max(V) + 4d."""
        return float(self.potential.max(initial=0.0)) + 4.0 * self.spec.dimension


def make_model(spec, dist, seed):
    return LatticeModel(spec=spec, potential=sample_potential(spec, dist, seed), seed=seed)


def apply_hamiltonian(model, psi):
    """Return H psi (uplifted diagonal, periodic nearest-neighbor hopping)."""
    psi = np.asarray(psi, dtype=np.float64)
    spec = model.spec
    if psi.shape != (spec.n_sites,):
        raise InvalidArgumentError(
            f"psi must have length {spec.n_sites}, got shape {psi.shape}"
        )
    diag = model.potential + spec.uplift
    if spec.dimension == 1:
        return diag * psi - np.roll(psi, 1) - np.roll(psi, -1)
    L = spec.side
    grid = psi.reshape(L, L)
    out = (diag * psi).reshape(L, L) - np.roll(grid, 1, axis=0) - np.roll(grid, -1, axis=0)
    out -= np.roll(grid, 1, axis=1) + np.roll(grid, -1, axis=1)
    return out.reshape(spec.n_sites)


def neighbor_pairs(spec):
    """Undirected nearest-neighbor pairs (i, j), each edge listed once."""
    L = spec.side
    if spec.dimension == 1:
        return [(i, (i + 1) % L) for i in range(L)]
    pairs = []
    for y in range(L):
        for x in range(L):
            i = y * L + x
            pairs.append((i, y * L + (x + 1) % L))
            pairs.append((i, ((y + 1) % L) * L + x))
    return pairs


def assemble_dense(model, cap=DENSE_CAP):
    """Dense symmetric matrix with the same action as apply_hamiltonian.

    Oracle support for small instances only; refuses above the site cap.
    """
    n = model.n_sites
    if n > cap:
        raise SizeLimitError(f"dense assembly capped at {cap} sites, model has {n}")
    H = np.zeros((n, n))
    np.fill_diagonal(H, model.potential + model.spec.uplift)
    for i, j in neighbor_pairs(model.spec):
        H[i, j] -= 1.0
        H[j, i] -= 1.0
    return H
