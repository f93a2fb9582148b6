"""Localization landscape: solve H u = 1 and form the effective potential
W = 1/u.

The uplifted H is a positive-definite M-matrix whenever the potential is not
identically zero, so u exists and is positive everywhere. 1D solves the
cyclic tridiagonal system directly; 2D runs conjugate gradient on the stencil.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConvergenceFailureError, InvalidArgumentError, SingularSystemError
from .lattice import apply_hamiltonian

DEFAULT_TOL = 1e-10
CG_ITER_FACTOR = 50


@dataclass(frozen=True)
class Landscape:
    """Landscape vector u (> 0 everywhere), its reciprocal w, and the max-norm
    residual of H u - 1 actually achieved."""

    u: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    residual_norm: float

    def __post_init__(self):
        if not np.all(self.u > 0.0):
            raise InvalidArgumentError("landscape must be positive everywhere")


def solve_landscape(model, tol=DEFAULT_TOL, method="auto"):
    """Solve H u = 1 to ||H u - 1||_inf <= tol.

    method: "auto" (direct in 1D, cg in 2D), "direct" (1D only), or "cg".
    """
    spec = model.spec
    if model.potential.max(initial=0.0) == 0.0:
        raise SingularSystemError(
            "potential is identically zero; H is singular on the periodic lattice"
        )
    if method == "auto":
        method = "direct" if spec.dimension == 1 else "cg"
    if method == "direct":
        if spec.dimension != 1:
            raise InvalidArgumentError("direct solve only covers 1D")
        diag = model.potential + spec.uplift
        u, status = kernels.solve_cyclic_1d(diag, np.ones(spec.n_sites))
        if status != 0:
            raise SingularSystemError("non-positive pivot in the cyclic tridiagonal solve")
    elif method == "cg":
        maxiter = CG_ITER_FACTOR * spec.side
        u, res, iters = kernels.cg_stencil(
            model.potential, spec.side, spec.dimension, 0.5 * tol, maxiter
        )
        if res > 0.5 * tol and iters >= maxiter:
            raise ConvergenceFailureError(
                f"conjugate gradient stalled after {iters} iterations "
                f"(residual {res:.3e}, tol {tol:.3e})",
                residual=res,
            )
    else:
        raise InvalidArgumentError(f"unknown method {method!r}")

    residual = float(np.abs(apply_hamiltonian(model, u) - 1.0).max())
    if residual > tol:
        raise ConvergenceFailureError(
            f"landscape residual {residual:.3e} exceeds tol {tol:.3e}", residual=residual
        )
    if not np.all(u > 0.0):
        raise ConvergenceFailureError(
            "landscape solve produced non-positive entries", residual=residual
        )
    return Landscape(u=u, w=1.0 / u, residual_norm=residual)


def landscape_identity_residual(model, land, psi):
    """Relative defect of the quadratic-form identity

        <psi, H psi> = sum_edges u_i u_j (psi_i/u_i - psi_j/u_j)^2 + sum_i psi_i^2 / u_i

    (each undirected edge once). Zero in exact arithmetic for every psi.
    """
    psi = np.asarray(psi, dtype=np.float64)
    spec = model.spec
    if psi.shape != (spec.n_sites,):
        raise InvalidArgumentError(
            f"psi must have length {spec.n_sites}, got shape {psi.shape}"
        )
    u = land.u
    lhs = float(psi @ apply_hamiltonian(model, psi))
    ratio = psi / u
    if spec.dimension == 1:
        edge = float(np.sum(u * np.roll(u, -1) * (ratio - np.roll(ratio, -1)) ** 2))
    else:
        L = spec.side
        u2 = u.reshape(L, L)
        r2 = ratio.reshape(L, L)
        edge = 0.0
        for ax in (0, 1):
            edge += float(
                np.sum(u2 * np.roll(u2, -1, axis=ax) * (r2 - np.roll(r2, -1, axis=ax)) ** 2)
            )
    rhs = edge + float(np.sum(psi * psi / u))
    return abs(lhs - rhs) / max(abs(lhs), 1.0)
