import numpy as np
import pytest

from landscapelaw import (
    InvalidArgumentError,
    LatticeModel,
    LatticeSpec,
    PotentialDistribution,
    SizeLimitError,
    apply_hamiltonian,
    assemble_dense,
    dense_eigenvalues,
    make_model,
    sample_potential,
)


def test_spec_validation():
    assert LatticeSpec(1, 3).n_sites == 3
    assert LatticeSpec(2, 5).n_sites == 25
    assert LatticeSpec(2, 5).uplift == 4.0
    assert LatticeSpec(1, 7).hopping == 1.0
    with pytest.raises(InvalidArgumentError):
        LatticeSpec(3, 10)
    with pytest.raises(InvalidArgumentError):
        LatticeSpec(1, 2)


def test_distribution_validation():
    with pytest.raises(InvalidArgumentError):
        PotentialDistribution("gaussian", 1.0)
    with pytest.raises(InvalidArgumentError):
        PotentialDistribution("binary", -1.0)


def test_distribution_cdf_closed_form():
    binary = PotentialDistribution("binary", 1.0)
    assert binary.cdf(0.5) == 0.5
    assert binary.cdf(-0.1) == 0.0
    assert binary.cdf(1.0) == 1.0
    uniform = PotentialDistribution("uniform", 1.0)
    assert uniform.cdf(0.25) == 0.25
    assert uniform.cdf(2.0) == 1.0


def test_sample_zero_vmax_gives_zero_vector():
    spec = LatticeSpec(1, 50)
    for kind in ("binary", "uniform"):
        v = sample_potential(spec, PotentialDistribution(kind, 0.0), seed=9)
        assert np.all(v == 0.0)


def test_sample_binary_values_and_mean():
    spec = LatticeSpec(1, 1_000_000)
    v = sample_potential(spec, PotentialDistribution("binary", 1.0), seed=123)
    assert set(np.unique(v)) <= {0.0, 1.0}
    # 5 sigma of the binomial mean
    assert abs(v.mean() - 0.5) < 5 * 0.5 / 1000


def test_sample_uniform_mean_is_half_vmax():
    spec = LatticeSpec(1, 1_000_000)
    v = sample_potential(spec, PotentialDistribution("uniform", 2.0), seed=5)
    assert np.all((v >= 0.0) & (v < 2.0))
    sigma = (2.0 / np.sqrt(12.0)) / 1000
    assert abs(v.mean() - 1.0) < 5 * sigma


def test_sample_determinism():
    spec = LatticeSpec(2, 31)
    dist = PotentialDistribution("uniform", 1.0)
    a = sample_potential(spec, dist, seed=2**63 + 17)
    b = sample_potential(spec, dist, seed=2**63 + 17)
    c = sample_potential(spec, dist, seed=2**63 + 18)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_apply_constant_vectors_1d():
    spec = LatticeSpec(1, 4)
    ones = np.ones(4)
    zero_pot = LatticeModel(spec, np.zeros(4))
    assert np.allclose(apply_hamiltonian(zero_pot, ones), 0.0)
    unit_pot = LatticeModel(spec, np.ones(4))
    assert np.allclose(apply_hamiltonian(unit_pot, ones), 1.0)


def test_apply_unit_vector_2d_stencil():
    spec = LatticeSpec(2, 3)
    model = make_model(spec, PotentialDistribution("binary", 1.0), seed=7)
    e0 = np.zeros(9)
    e0[0] = 1.0
    out = apply_hamiltonian(model, e0)
    assert out[0] == model.potential[0] + 4.0
    neighbors = {1, 2, 3, 6}  # periodic x and y neighbors of site (0, 0)
    for j in neighbors:
        assert out[j] == -1.0
    assert np.allclose(out, assemble_dense(model) @ e0)


def test_apply_length_mismatch():
    model = LatticeModel(LatticeSpec(1, 4), np.ones(4))
    with pytest.raises(InvalidArgumentError):
        apply_hamiltonian(model, np.ones(5))


def test_dense_small_explicit():
    m3 = LatticeModel(LatticeSpec(1, 3), np.zeros(3))
    expected = np.array([[2.0, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert np.array_equal(assemble_dense(m3), expected)

    m4 = LatticeModel(LatticeSpec(1, 4), np.ones(4))
    expected4 = np.array(
        [[3.0, -1, 0, -1], [-1, 3, -1, 0], [0, -1, 3, -1], [-1, 0, -1, 3]]
    )
    assert np.array_equal(assemble_dense(m4), expected4)


@pytest.mark.parametrize("dim,side", [(1, 17), (1, 40), (2, 5), (2, 9)])
def test_dense_matches_action(dim, side):
    model = make_model(LatticeSpec(dim, side), PotentialDistribution("uniform", 2.0), seed=dim * side)
    H = assemble_dense(model)
    assert np.array_equal(H, H.T)
    rng = np.random.default_rng(42)
    for _ in range(20):
        psi = rng.normal(size=model.n_sites)
        ref = H @ psi
        out = apply_hamiltonian(model, psi)
        assert np.max(np.abs(out - ref)) <= 1e-13 * max(np.max(np.abs(ref)), 1.0)


def test_dense_cap():
    model = make_model(LatticeSpec(2, 70), PotentialDistribution("binary", 1.0), seed=0)
    with pytest.raises(SizeLimitError):
        assemble_dense(model)


@pytest.mark.parametrize("dim,side,kind", [(1, 60, "binary"), (2, 8, "uniform")])
def test_symmetry_of_action(dim, side, kind):
    model = make_model(LatticeSpec(dim, side), PotentialDistribution(kind, 1.0), seed=3)
    rng = np.random.default_rng(11)
    for _ in range(100):
        phi = rng.normal(size=model.n_sites)
        psi = rng.normal(size=model.n_sites)
        lhs = phi @ apply_hamiltonian(model, psi)
        rhs = apply_hamiltonian(model, phi) @ psi
        assert abs(lhs - rhs) <= 1e-12 * np.linalg.norm(phi) * np.linalg.norm(psi)


@pytest.mark.parametrize("dim,side", [(1, 30), (2, 6)])
def test_gershgorin_spectrum_bounds(dim, side):
    vmax = 1.5
    model = make_model(LatticeSpec(dim, side), PotentialDistribution("uniform", vmax), seed=8)
    w = dense_eigenvalues(assemble_dense(model))
    assert w[0] >= -1e-10
    assert w[-1] <= vmax + 4.0 * dim + 1e-10


def test_model_validation():
    with pytest.raises(InvalidArgumentError):
        LatticeModel(LatticeSpec(1, 4), np.ones(5))
    with pytest.raises(InvalidArgumentError):
        LatticeModel(LatticeSpec(1, 4), np.array([0.0, 1.0, -0.5, 0.0]))
