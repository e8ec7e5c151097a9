import math

import numpy as np
import pytest

from dimsvm import (
    HyperGrid,
    InputError,
    build_grids,
    exponent_net,
    fit_krr,
    tv_select,
)
from oracles import interval_cover_check


# --- exponent nets ------------------------------------------------------------


def test_radius_one_net_of_unit_interval():
    net = exponent_net(0.0, 1.0, 1.0, half_open=True)
    np.testing.assert_array_equal(net.points, [1.0])


def test_quarter_radius_net_of_unit_interval():
    net = exponent_net(0.0, 1.0, 0.25, half_open=True)
    np.testing.assert_array_equal(net.points, [1.0, 0.5, 0.25])
    # coverage: [0.75,1.25] + [0.25,0.75] + [0,0.5] covers (0, 1]
    assert interval_cover_check(net.points, 0.0, 1.0, 0.25)


def test_degenerate_interval():
    net = exponent_net(1.0, 1.0, 0.37)
    np.testing.assert_array_equal(net.points, [1.0])


def test_net_rejects_bad_epsilon():
    with pytest.raises(InputError):
        exponent_net(0.0, 1.0, 0.0)
    with pytest.raises(InputError):
        exponent_net(0.0, 1.0, -0.5)


def test_net_coverage_and_cardinality_random():
    rng = np.random.default_rng(0)
    for _ in range(50):
        lo = rng.uniform(-2, 2)
        hi = lo + rng.uniform(0.0, 5.0)
        eps = 10.0 ** rng.uniform(-2, 0.3)
        half_open = bool(rng.random() < 0.5)
        net = exponent_net(lo, hi, eps, half_open=half_open)
        assert net.points[0] == hi
        assert np.all(np.diff(net.points) < 0) or net.points.size == 1
        if half_open:
            assert np.all(net.points > lo)
        else:
            assert np.all(net.points >= lo)
        assert interval_cover_check(net.points, lo, hi, eps,
                                    seed=int(rng.integers(1 << 30)), half_open=half_open)
        bound = math.ceil(max(0.0, hi - lo - eps) / (2 * eps)) + 1
        assert net.points.size <= bound


# --- grids ----------------------------------------------------------------------


def test_grid_d1_regression_lambda_singleton():
    grid = build_grids(100, 1, "regression")
    np.testing.assert_array_equal(grid.lambdas, [0.01])
    assert 1.0 / 100.0 in grid.gammas


def test_grid_cardinality_formula_at_e10():
    n = round(math.exp(10.0))
    grid = build_grids(n, 1, "regression")
    # radius is 1/log(n) ~ 0.1: ceil((1 - eps)/(2 eps)) + 1 points
    eps = 1.0 / math.log(n)
    expected = math.ceil((1.0 - eps) / (2 * eps)) + 1
    assert grid.gammas.size == expected == 6


def test_grid_mandatory_members_exact():
    for n in (10, 100, 1000):
        for d in (1, 3, 7):
            for mode in ("regression", "classification"):
                grid = build_grids(n, d, mode)
                assert 1.0 in grid.gamma_net.points
                assert float(d) in grid.lambda_net.points
                assert float(n) ** (-1.0) in grid.gammas
                assert float(n) ** (-float(d)) in grid.lambdas


def test_grid_candidates_in_unit_interval():
    grid = build_grids(50, 4, "classification")
    for arr in (grid.gammas, grid.lambdas):
        assert np.all(arr > 0) and np.all(arr <= 1)


def test_grid_log_cardinality_bound():
    for n in (10, 100, 10_000, 1_000_000):
        grid = build_grids(n, 5, "regression")
        assert grid.gammas.size <= math.ceil(math.log(n) / 2) + 1


def test_grid_singleton_lambda():
    grid = build_grids(200, 3, "regression", singleton_lambda=True)
    np.testing.assert_array_equal(grid.lambdas, [200.0**-3])
    assert grid.lambda_net is None


def test_grid_small_n_rejected():
    with pytest.raises(InputError):
        build_grids(2, 3, "regression")


def test_grid_classification_interval_is_half_open():
    grid = build_grids(1000, 4, "classification")
    assert grid.lambda_net.lo == 0.0 and grid.lambda_net.half_open
    reg = build_grids(1000, 4, "regression")
    assert reg.lambda_net.lo == 1.0 and not reg.lambda_net.half_open


# --- train/validation selection ---------------------------------------------------


def _toy_regression(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.uniform(0, 1, (n, 1))
    y = np.sin(2 * np.pi * X[:, 0]) + rng.uniform(-0.1, 0.1, n)
    return X, y


def test_singleton_grid_returns_its_pair():
    X, y = _toy_regression(24, 0)
    grid = HyperGrid(gammas=np.array([0.3]), lambdas=np.array([0.01]), n=24, mode="regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=2.0)
    assert result.best_pair == (0.01, 0.3)
    assert result.n_train == 13


def test_zero_loss_pair_wins():
    # back half has constant label 0; a zero-fit beats any non-zero fit
    X = np.linspace(0, 1, 8)[:, None]
    y = np.array([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    grid = HyperGrid(gammas=np.array([0.5]), lambdas=np.array([1e-3, 1.0]), n=8,
                     mode="regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=1.0)
    assert result.val_risk == 0.0


def test_overfit_candidate_loses_to_generalizing_one():
    # tiny gamma interpolates the training half but transfers nothing to the
    # validation half; a moderate gamma generalizes
    X, y = _toy_regression(60, 1)
    grid = HyperGrid(gammas=np.array([1e-4, 0.5]), lambdas=np.array([1e-6]), n=60,
                     mode="regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=2.0)
    assert result.gamma == 0.5
    risks = {(lam, g): r for lam, g, r, _ in result.records}
    assert risks[(1e-6, 0.5)] < risks[(1e-6, 1e-4)]


def test_selection_matches_exhaustive_recomputation():
    from dimsvm import clip, empirical_risk, predict

    X, y = _toy_regression(40, 2)
    grid = build_grids(40, 1, "regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=2.0)
    m = 40 // 2 + 1
    best = np.inf
    for lam in grid.lambdas:
        for gamma in grid.gammas:
            model = fit_krr(X[:m], y[:m], lam, gamma, clip_m=2.0)
            risk = empirical_risk(clip(predict(model, X[m:]), 2.0), y[m:], "ls")
            best = min(best, risk)
    assert result.val_risk == pytest.approx(best, rel=1e-12)


def test_split_is_order_preserving_without_refit():
    X, y = _toy_regression(21, 3)
    grid = HyperGrid(gammas=np.array([0.4]), lambdas=np.array([0.05]), n=21, mode="regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=2.0)
    m = 21 // 2 + 1
    assert result.n_train == m
    np.testing.assert_array_equal(result.model.support_points, X[:m])
    direct = fit_krr(X[:m], y[:m], 0.05, 0.4, clip_m=2.0)
    np.testing.assert_array_equal(result.model.coefficients, direct.coefficients)


def test_ties_break_toward_stronger_regularization():
    # constant-zero labels: every candidate attains zero validation risk
    X = np.linspace(0, 1, 10)[:, None]
    y = np.zeros(10)
    grid = HyperGrid(gammas=np.array([0.9, 0.2]), lambdas=np.array([0.5, 1e-3]), n=10,
                     mode="regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=1.0)
    assert result.best_pair == (0.5, 0.9)


def test_tv_select_requires_four_points():
    with pytest.raises(InputError):
        tv_select(np.zeros((3, 1)), np.zeros(3),
                  HyperGrid(gammas=np.array([0.5]), lambdas=np.array([0.5]), n=3,
                            mode="regression"),
                  loss="ls", clip_m=1.0)


def test_tv_select_hinge_clip_must_be_one():
    X = np.array([[0.0], [0.2], [0.8], [1.0]])
    y = np.array([-1.0, -1.0, 1.0, 1.0])
    grid = HyperGrid(gammas=np.array([0.5]), lambdas=np.array([0.01]), n=4, mode="classification")
    with pytest.raises(InputError):
        tv_select(X, y, grid, loss="hinge", clip_m=2.0)
    result = tv_select(X, y, grid, loss="hinge")
    assert result.model.loss == "hinge"


def test_records_cover_whole_grid():
    X, y = _toy_regression(30, 4)
    grid = build_grids(30, 2, "regression")
    result = tv_select(X, y, grid, loss="ls", clip_m=2.0, keep_models=True)
    assert len(result.records) == grid.n_candidates
    assert len(result.models) == grid.n_candidates
