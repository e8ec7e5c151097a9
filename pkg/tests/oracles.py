"""Independent reference computations used to check the library's solvers.

These deliberately avoid the code paths they verify: the dual maximizer is
plain projected gradient ascent, the covering oracle is a greedy
farthest-point net, and risks are recomputed from definitions.
"""

import numpy as np

from dimsvm import kernel_matrix


def hinge_primal_objective(K, y, coef, lam):
    """lam * a^T K a + (1/n) sum max(0, 1 - y * f) for f = K a."""
    f = K @ coef
    n = y.shape[0]
    return float(lam * coef @ f + np.mean(np.maximum(0.0, 1.0 - y * f)))


def krr_objective(K, y, coef, lam):
    """lam * a^T K a + (1/n) ||K a - y||^2."""
    f = K @ coef
    n = y.shape[0]
    return float(lam * coef @ f + np.sum((f - y) ** 2) / n)


def hinge_dual_oracle(X, y, lam, gamma, max_iter=200_000, tol=1e-12):
    """Box-constrained dual maximizer by projected gradient ascent.

    Maximizes ``sum(b) - 0.5 b^T Q b`` over ``0 <= b <= C`` with
    ``Q = diag(y) K diag(y)`` and ``C = 1/(2 lam n)``, using the safe step
    ``1/L`` with ``L`` the largest eigenvalue of Q.  Returns the model
    coefficients ``b * y``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    n = y.shape[0]
    c_upper = 1.0 / (2.0 * lam * n)
    K = kernel_matrix(X, gamma)
    Q = (y[:, None] * y[None, :]) * K
    step = 1.0 / max(np.linalg.eigvalsh(Q).max(), 1e-12)
    beta = np.zeros(n)
    for _ in range(max_iter):
        grad = 1.0 - Q @ beta
        new = np.clip(beta + step * grad, 0.0, c_upper)
        if np.max(np.abs(new - beta)) < tol:
            beta = new
            break
        beta = new
    return beta * y


def greedy_sup_norm_net(points, epsilon):
    """Greedy farthest-point epsilon-net in the sup norm; returns its size.

    Upper-bounds the minimal covering number and lower-bounds the packing
    number at the same radius, so it brackets grid-cell counts within a
    factor 2^d.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    remaining = np.ones(points.shape[0], dtype=bool)
    centers = 0
    while remaining.any():
        idx = int(np.argmax(remaining))
        center = points[idx]
        covered = np.max(np.abs(points - center), axis=1) <= epsilon
        remaining &= ~covered
        centers += 1
    return centers


def interval_cover_check(net_points, lo, hi, epsilon, n_probe=10_000, seed=0, half_open=True):
    """Sample the interval and verify every probe is within epsilon of the net."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(lo, hi, n_probe)
    if half_open:
        u = u[u > lo]
    net_points = np.asarray(net_points, dtype=float)
    dist = np.min(np.abs(u[:, None] - net_points[None, :]), axis=1)
    return float(np.max(dist)) <= epsilon + 1e-12
