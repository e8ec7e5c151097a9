import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimsvm import InputError, cross_kernel, gaussian_eval, kernel_matrix


def test_identity_pair_gives_one():
    assert gaussian_eval([0.3, -0.2], [0.3, -0.2], 0.7) == 1.0


def test_unit_scaled_distance_gives_inverse_e():
    # ||x - y|| == gamma forces exp(-1)
    assert gaussian_eval([0.0], [0.5], 0.5) == pytest.approx(np.exp(-1.0), rel=1e-15)


def test_direct_formula_value():
    assert gaussian_eval([0.0, 0.0], [3.0, 4.0], 1.0) == pytest.approx(np.exp(-25.0), rel=1e-15)


def test_dimension_mismatch_rejected():
    with pytest.raises(InputError):
        gaussian_eval([0.0, 0.0], [1.0], 1.0)


@pytest.mark.parametrize("gamma", [0.0, -1.0, np.inf, np.nan])
def test_bad_bandwidth_rejected(gamma):
    with pytest.raises(InputError):
        gaussian_eval([0.0], [1.0], gamma)


def test_single_point_matrix():
    np.testing.assert_array_equal(kernel_matrix([[0.5, 0.5]], 1.0), [[1.0]])


def test_two_identical_points():
    K = kernel_matrix([[1.0, 2.0], [1.0, 2.0]], 0.3)
    np.testing.assert_array_equal(K, np.ones((2, 2)))


def test_two_points_at_distance_gamma():
    K = kernel_matrix([[0.0], [0.25]], 0.25)
    assert K[0, 1] == pytest.approx(np.exp(-1.0), rel=1e-15)
    assert K[1, 0] == K[0, 1]


def test_empty_input_rejected():
    with pytest.raises(InputError):
        kernel_matrix(np.zeros((0, 2)), 1.0)


def test_matrix_is_bitwise_symmetric_with_unit_diagonal():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 3))
    K = kernel_matrix(X, 0.8)
    assert np.array_equal(K, K.T)
    np.testing.assert_array_equal(np.diag(K), np.ones(40))
    assert K.min() >= 0.0 and K.max() <= 1.0


def test_psd_after_ridge():
    rng = np.random.default_rng(1)
    for gamma in (0.1, 1.0, 5.0):
        K = kernel_matrix(rng.normal(size=(25, 2)), gamma)
        ridge = 1e-8
        # Cholesky succeeding certifies positive definiteness of K + c*I
        np.linalg.cholesky(K + ridge * np.eye(25))
        assert np.linalg.eigvalsh(K + ridge * np.eye(25)).min() > 0


@settings(max_examples=50, deadline=None)
@given(
    s=st.floats(min_value=0.01, max_value=100.0),
    gamma=st.floats(min_value=0.01, max_value=10.0),
)
def test_scaling_invariance(s, gamma):
    x = np.array([0.2, -0.7])
    y = np.array([1.1, 0.4])
    base = gaussian_eval(x, y, gamma)
    scaled = gaussian_eval(s * x, s * y, s * gamma)
    assert scaled == pytest.approx(base, rel=1e-12)


def test_strictly_increasing_in_gamma():
    x, y = np.array([0.0]), np.array([1.0])
    gammas = np.linspace(0.2, 5.0, 30)
    vals = [gaussian_eval(x, y, g) for g in gammas]
    assert np.all(np.diff(vals) > 0)


def test_cross_kernel_matches_kernel_matrix():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(15, 4))
    np.testing.assert_allclose(cross_kernel(X, X, 0.6), kernel_matrix(X, 0.6), atol=1e-15)


def test_cross_kernel_hits_one_at_shared_point():
    X_train = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]])
    row = cross_kernel([[1.0, 1.0]], X_train, 0.5)[0]
    assert row[1] == 1.0
    assert row[0] < 1.0 and row[2] < 1.0


def test_far_test_point_underflows():
    X_train = np.random.default_rng(3).normal(size=(5, 2))
    row = cross_kernel([[100.0, 100.0]], X_train, 0.5)[0]
    assert np.all(row < 1e-10)


def test_cross_kernel_dimension_mismatch():
    with pytest.raises(InputError):
        cross_kernel([[0.0, 1.0]], [[0.0, 1.0, 2.0]], 1.0)
