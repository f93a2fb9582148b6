import numpy as np
import pytest

import landscapelaw.landscape as landscape_mod
from landscapelaw import (
    ConvergenceFailureError,
    InvalidArgumentError,
    LatticeModel,
    LatticeSpec,
    PotentialDistribution,
    SingularSystemError,
    apply_hamiltonian,
    assemble_dense,
    landscape_identity_residual,
    make_model,
    solve_landscape,
)


@pytest.mark.parametrize("dim,side", [(1, 12), (2, 6)])
@pytest.mark.parametrize("c", [1.0, 4.0])
def test_constant_potential_analytic(dim, side, c):
    model = LatticeModel(LatticeSpec(dim, side), np.full(side**dim, c))
    land = solve_landscape(model)
    assert np.allclose(land.u, 1.0 / c, atol=1e-12)
    assert np.allclose(land.w, c, atol=1e-11)
    assert land.residual_norm <= 1e-10


def test_1d_matches_dense_solve():
    model = LatticeModel(LatticeSpec(1, 5), np.array([1.0, 0.0, 0.0, 2.0, 0.0]))
    land = solve_landscape(model)
    ref = np.linalg.solve(assemble_dense(model), np.ones(5))
    assert np.max(np.abs(land.u - ref)) <= 1e-10 * np.max(np.abs(ref))


def test_zero_potential_is_singular():
    model = LatticeModel(LatticeSpec(1, 10), np.zeros(10))
    with pytest.raises(SingularSystemError):
        solve_landscape(model)


def test_direct_method_rejects_2d():
    model = make_model(LatticeSpec(2, 5), PotentialDistribution("binary", 1.0), seed=0)
    with pytest.raises(InvalidArgumentError):
        solve_landscape(model, method="direct")


def test_cg_convergence_failure_carries_residual(monkeypatch):
    monkeypatch.setattr(landscape_mod, "CG_ITER_FACTOR", 0)
    model = make_model(LatticeSpec(2, 8), PotentialDistribution("uniform", 1.0), seed=5)
    with pytest.raises(ConvergenceFailureError) as err:
        solve_landscape(model, method="cg")
    assert err.value.residual is not None and err.value.residual > 0


def test_direct_and_cg_agree_on_1d():
    for seed in range(5):
        model = make_model(LatticeSpec(1, 200), PotentialDistribution("uniform", 1.0), seed=seed)
        direct = solve_landscape(model, method="direct")
        viacg = solve_landscape(model, method="cg")
        assert np.max(np.abs(direct.u - viacg.u)) <= 1e-8


def test_identity_psi_equals_u_and_zero():
    model = make_model(LatticeSpec(2, 8), PotentialDistribution("binary", 1.0), seed=1)
    land = solve_landscape(model, tol=1e-12)
    assert landscape_identity_residual(model, land, land.u) <= 1e-11
    assert landscape_identity_residual(model, land, np.zeros(model.n_sites)) == 0.0


def test_identity_random_vectors_2d():
    model = make_model(LatticeSpec(2, 10), PotentialDistribution("uniform", 1.0), seed=23)
    land = solve_landscape(model, tol=1e-12)
    rng = np.random.default_rng(23)
    for _ in range(50):
        psi = rng.normal(size=100)
        assert landscape_identity_residual(model, land, psi) <= 1e-11


def test_identity_is_algebraic_for_exact_u():
    # with u solved to machine precision the identity holds for any psi,
    # including 1D periodic wrap
    model = make_model(LatticeSpec(1, 30), PotentialDistribution("binary", 2.0), seed=9)
    land = solve_landscape(model, tol=1e-12)
    rng = np.random.default_rng(2)
    for _ in range(20):
        psi = rng.normal(size=30)
        assert landscape_identity_residual(model, land, psi) <= 1e-12


def test_identity_length_mismatch():
    model = make_model(LatticeSpec(1, 8), PotentialDistribution("binary", 1.0), seed=0)
    land = solve_landscape(model)
    with pytest.raises(InvalidArgumentError):
        landscape_identity_residual(model, land, np.ones(9))


def test_positivity_many_models():
    rng = np.random.default_rng(4)
    for trial in range(700):
        side = int(rng.integers(3, 50))
        kind = "binary" if trial % 2 == 0 else "uniform"
        vmax = float(rng.choice([0.5, 1.0, 2.0, 4.0]))
        model = make_model(LatticeSpec(1, side), PotentialDistribution(kind, vmax), seed=trial)
        if model.potential.max() == 0.0:
            continue  # binary draw can be all zero on tiny chains
        land = solve_landscape(model)
        assert land.u.min() > 0.0
    for trial in range(300):
        side = int(rng.integers(3, 12))
        kind = "uniform" if trial % 2 == 0 else "binary"
        model = make_model(LatticeSpec(2, side), PotentialDistribution(kind, 1.0), seed=trial)
        if model.potential.max() == 0.0:
            continue
        land = solve_landscape(model)
        assert land.u.min() > 0.0


def test_residual_meets_tolerance():
    model = make_model(LatticeSpec(2, 12), PotentialDistribution("uniform", 1.0), seed=3)
    land = solve_landscape(model, tol=1e-11)
    res = np.max(np.abs(apply_hamiltonian(model, land.u) - 1.0))
    assert res <= 1e-11
    assert land.residual_norm == res
