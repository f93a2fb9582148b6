import numpy as np
import pytest

from landscapelaw import (
    EnergyGrid,
    EnsembleError,
    InvalidArgumentError,
    LatticeSpec,
    PotentialDistribution,
    curves_from_realizations,
    fit_constants,
    run_ensemble,
    run_realizations,
    split_error_bars,
)

SPEC = LatticeSpec(1, 120)
DIST = PotentialDistribution("binary", 1.0)
GRID = EnergyGrid.log_spaced(0.05, 5.0, 30)


def test_single_realization_mean_is_curve():
    cn, cnu = run_ensemble(SPEC, DIST, GRID, n=1, base_seed=5)
    assert np.all(cn.std == 0.0)
    assert np.all(cnu.std == 0.0)
    assert cn.n_realizations == 1
    rows_n, rows_nu = run_realizations(SPEC, DIST, GRID, 1, 5)
    assert np.array_equal(cn.mean, rows_n[0])
    assert np.array_equal(cnu.mean, rows_nu[0])


def test_degenerate_ensemble_zero_std():
    # v_max = 0 plus a constant offset: every realization is V = 1
    dist0 = PotentialDistribution("binary", 0.0)
    cn, cnu = run_ensemble(SPEC, dist0, GRID, n=2, base_seed=0, potential_offset=1.0)
    assert np.all(cn.std == 0.0)
    assert np.all(cnu.std == 0.0)


def test_seed_determinism_and_worker_independence():
    a_n, a_nu = run_realizations(SPEC, DIST, GRID, 6, 42, workers=1)
    b_n, b_nu = run_realizations(SPEC, DIST, GRID, 6, 42, workers=2)
    c_n, _ = run_realizations(SPEC, DIST, GRID, 6, 43, workers=2)
    assert np.array_equal(a_n, b_n)
    assert np.array_equal(a_nu, b_nu)
    assert not np.array_equal(a_n, c_n)


def test_group_means_recombine_to_global_mean():
    rows_n, rows_nu = run_realizations(SPEC, DIST, GRID, 8, 7)
    cn, _ = curves_from_realizations(GRID, rows_n, rows_nu)
    group_means = [rows_n[k * 2 : (k + 1) * 2].mean(axis=0) for k in range(4)]
    assert np.max(np.abs(np.mean(group_means, axis=0) - cn.mean)) <= 1e-12


def test_realization_failure_carries_index():
    dist0 = PotentialDistribution("binary", 0.0)  # identically zero potential
    with pytest.raises(EnsembleError) as err:
        run_ensemble(SPEC, dist0, GRID, n=3, base_seed=0)
    assert err.value.realization in (0, 1, 2)


def test_which_selects_single_curve():
    rows_n, rows_nu = run_realizations(SPEC, DIST, GRID, 2, 1, which="idos")
    assert rows_nu is None and rows_n.shape == (2, len(GRID))
    rows_n2, rows_nu2 = run_realizations(SPEC, DIST, GRID, 2, 1, which="nu")
    assert rows_n2 is None and rows_nu2.shape == (2, len(GRID))


def test_split_error_bars_identical_groups_are_zero():
    rows_n, rows_nu = run_realizations(SPEC, DIST, GRID, 4, 3)
    # tile the same group so every block is identical
    tiled_n = np.tile(rows_n, (3, 1))
    tiled_nu = np.tile(rows_nu, (3, 1))
    fit = lambda a, b: fit_constants(a, b, e_min=0.05)
    bars = split_error_bars(tiled_n, tiled_nu, GRID, 3, fit)
    assert set(bars) == {"c4", "c5", "c5_fit", "c6"}
    assert all(v == 0.0 for v in bars.values())


def test_split_error_bars_group_count_must_divide():
    rows_n, rows_nu = run_realizations(SPEC, DIST, GRID, 4, 3)
    fit = lambda a, b: fit_constants(a, b, e_min=0.05)
    with pytest.raises(InvalidArgumentError):
        split_error_bars(rows_n, rows_nu, GRID, 3, fit)
    with pytest.raises(InvalidArgumentError):
        split_error_bars(rows_n, rows_nu, GRID, 1, fit)


def test_split_error_bars_recover_injected_spread():
    # groups whose fitted 1/c5_fit spread is known: scale nu rows per group;
    # the curved base pins the c6 scan at exactly 1 so only the prefactor moves
    rng = np.random.default_rng(0)
    grid = EnergyGrid.log_spaced(0.05, 2.0, 40)
    base = 0.25 * np.exp(-0.3 / np.sqrt(grid.values)) * grid.values**0.5
    n_groups, per_group = 20, 5
    factors = 1.0 + 0.05 * rng.standard_normal(n_groups)
    rows_n, rows_nu = [], []
    for g in range(n_groups):
        for _ in range(per_group):
            rows_n.append(base)
            rows_nu.append(np.clip(3.0 * factors[g] * base, 0.0, 1.0))
    rows_n = np.array(rows_n)
    rows_nu = np.array(rows_nu)
    fit = lambda a, b: fit_constants(a, b, e_min=0.05, e_max=1.9)
    bars = split_error_bars(rows_n, rows_nu, grid, n_groups, fit)
    injected = 2.0 * np.std(3.0 * factors, ddof=1)
    assert abs(bars["c5_fit"] - injected) <= 0.5 * injected


def test_cross_seed_consistency_of_means():
    spec = LatticeSpec(1, 400)
    grid = EnergyGrid(np.array([0.5, 1.0, 2.0]), "linear")
    n = 80
    a_n, _ = run_ensemble(spec, DIST, grid, n=n, base_seed=1000)
    b_n, _ = run_ensemble(spec, DIST, grid, n=n, base_seed=9000)
    for k in range(len(grid)):
        sigma = np.sqrt(a_n.std[k] ** 2 / n + b_n.std[k] ** 2 / n)
        assert abs(a_n.mean[k] - b_n.mean[k]) <= 3.0 * sigma


def test_mean_curves_validated():
    cn, cnu = run_ensemble(SPEC, DIST, GRID, n=3, base_seed=2)
    assert np.all(np.diff(cn.mean) >= 0.0)
    assert np.all((cn.mean >= 0.0) & (cn.mean <= 1.0))
    assert np.all(cnu.std >= 0.0)
