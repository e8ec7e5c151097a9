import numpy as np
import pytest

from dimsvm import (
    CoveringProfile,
    InputError,
    NumericalError,
    boxdim_estimate,
    covering_count,
    covering_profile,
)
from oracles import greedy_sup_norm_net


# --- covering counts -----------------------------------------------------------


def test_single_point_any_scale():
    for eps in (1e-3, 0.1, 10.0):
        assert covering_count([[0.3, 0.7]], eps) == 1


def test_two_point_cell_indexing():
    # cell side 0.5: floor(0.1/0.5) = 0 and floor(0.9/0.5) = 1 per axis
    assert covering_count([[0.1, 0.1], [0.9, 0.9]], 0.25) == 2


def test_regular_grid_occupies_every_cell():
    m = 4
    pts = np.array([[i / m, j / m] for i in range(m) for j in range(m)])
    assert covering_count(pts, 1.0 / (2 * m)) == m * m


def test_epsilon_validation():
    with pytest.raises(InputError):
        covering_count([[0.0]], 0.0)
    with pytest.raises(InputError):
        covering_count(np.zeros((0, 2)), 0.5)


def test_translation_by_cell_side_is_invariant():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(100, 3))
    eps = 0.2
    for k in (1, 2, -3):
        shifted = pts + k * 2 * eps
        assert covering_count(shifted, eps) == covering_count(pts, eps)


def test_dyadic_monotonicity():
    rng = np.random.default_rng(1)
    pts = rng.uniform(0, 1, (500, 2))
    for eps in (0.01, 0.05, 0.1):
        fine = covering_count(pts, eps)
        coarse = covering_count(pts, 2 * eps)
        assert coarse <= fine  # doubling the scale merges cells 4-to-1
        assert fine <= 4 * coarse


def test_grid_count_brackets_greedy_net():
    rng = np.random.default_rng(2)
    for _ in range(15):
        n = int(rng.integers(5, 201))
        d = int(rng.integers(1, 4))
        pts = rng.uniform(0, 1, (n, d))
        eps = 10.0 ** rng.uniform(-1.5, -0.3)
        grid = covering_count(pts, eps)
        greedy = greedy_sup_norm_net(pts, eps)
        assert greedy / 2**d <= grid <= greedy * 2**d


# --- profiles -------------------------------------------------------------------


def test_profile_single_point_all_ones():
    profile = covering_profile([[0.5, 0.5]], 2, 6)
    np.testing.assert_array_equal(profile.counts, np.ones(5, dtype=np.int64))
    np.testing.assert_allclose(profile.scales, 2.0 ** -np.arange(2, 7))


def test_profile_two_points_saturate():
    profile = covering_profile([[0.0, 0.0], [1.0, 1.0]], 2, 8)
    assert profile.counts[-1] == 2
    assert np.all(np.diff(profile.counts) >= 0)


def test_profile_uniform_square_occupancy():
    rng = np.random.default_rng(3)
    pts = rng.uniform(0, 1, (100_000, 2))
    profile = covering_profile(pts, 2, 6)
    for k, count in zip(range(2, 7), profile.counts):
        cells = (2 ** (k - 1)) ** 2  # cell side is twice the scale
        assert 0.5 * cells <= count <= cells


def test_profile_validation():
    with pytest.raises(InputError):
        covering_profile([[0.0]], 5, 5)
    with pytest.raises(InputError):
        covering_profile([[0.0]], 2, 6, base=1.0)
    with pytest.raises(InputError):
        CoveringProfile(scales=np.array([0.1, 0.2]), counts=np.array([1, 2]))
    with pytest.raises(InputError):
        CoveringProfile(scales=np.array([0.2, 0.1]), counts=np.array([2, 1]))


# --- dimension fits ----------------------------------------------------------------


def test_exact_power_law_recovered_to_machine_precision():
    scales = 2.0 ** -np.arange(1, 8).astype(float)
    counts = np.round((1.0 / scales) ** 2).astype(np.int64)
    est = boxdim_estimate(CoveringProfile(scales=scales, counts=counts))
    assert est.rho_hat == pytest.approx(2.0, abs=1e-12)
    assert est.r_squared == pytest.approx(1.0, abs=1e-12)
    assert est.c_dim_hat == pytest.approx(1.0, rel=1e-10)


def test_flat_profile_is_zero_dimensional():
    scales = 2.0 ** -np.arange(2, 7).astype(float)
    est = boxdim_estimate(CoveringProfile(scales=scales, counts=np.ones(5, dtype=np.int64)))
    assert est.rho_hat == 0.0
    assert est.r_squared == 1.0


def test_coarse_plateau_is_dropped():
    # counts frozen at the two coarsest scales bias the slope if kept
    scales = 2.0 ** -np.arange(0, 7).astype(float)
    counts = np.array([4, 4, 4, 8, 16, 32, 64], dtype=np.int64)
    est = boxdim_estimate(CoveringProfile(scales=scales, counts=counts))
    assert est.rho_hat == pytest.approx(1.0, abs=1e-12)
    assert est.scales_used.size == 5


def test_saturated_scales_are_dropped():
    scales = 2.0 ** -np.arange(1, 6).astype(float)
    counts = np.array([4, 16, 64, 95, 99], dtype=np.int64)
    est = boxdim_estimate(CoveringProfile(scales=scales, counts=counts, n_points=100))
    # the last two counts exceed 0.9 * 100 and must not flatten the slope
    assert est.scales_used.size == 3
    assert est.rho_hat == pytest.approx(2.0, abs=1e-12)


def test_too_few_scales_is_an_error():
    scales = np.array([0.5, 0.25])
    counts = np.array([99, 100], dtype=np.int64)
    with pytest.raises(NumericalError):
        boxdim_estimate(CoveringProfile(scales=scales, counts=counts, n_points=100))


def test_uniform_cube_dimension_three():
    rng = np.random.default_rng(4)
    pts = rng.uniform(0, 1, (100_000, 3))
    est = boxdim_estimate(covering_profile(pts, 2, 6))
    assert 2.8 <= est.rho_hat <= 3.1
