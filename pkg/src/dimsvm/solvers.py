"""Regularized kernel estimators for the least-squares and hinge losses.

Both solvers minimize

    lam * ||f||_H^2 + (1/n) * sum_i L(y_i, f(x_i))

over the Gaussian RKHS H, for L the squared loss (kernel ridge regression)
or the hinge loss (support vector classification, no offset term).  The
returned model is the representer expansion ``f(x) = sum_i a_i k(x, x_i)``.

Least squares: the stationarity condition in the representer coefficients
is ``(K + n*lam*I) a = y``, solved by dense Cholesky (the matrix is SPD
because ``n*lam > 0``).

Hinge: the objective equals, up to the constant factor ``2*lam``, the
standard no-bias C-SVM with ``C = 1 / (2*lam*n)``.  Its dual,

    max  sum_i b_i - 0.5 * sum_ij b_i b_j y_i y_j K_ij
    s.t. 0 <= b_i <= C,

is solved by cyclic dual coordinate descent with exact single-coordinate
updates (the Gaussian kernel has unit diagonal, so each update is a single
clipped step).  Model coefficients are ``a_i = b_i * y_i``.  Termination is
certified by the duality gap, reported in the paper's scaling (i.e. times
``2*lam``).
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from .errors import InputError, NumericalError
from .kernel import as_points, check_bandwidth, cross_kernel, kernel_matrix

__all__ = [
    "SvmConfig",
    "FittedModel",
    "clip",
    "fit_krr",
    "fit_hinge",
    "fit_svm",
    "predict",
    "empirical_risk",
]

LOSSES = ("ls", "hinge")

KRR_TOL = 1e-10        # residual tolerance, max norm
HINGE_GAP_TOL = 1e-6   # duality gap tolerance
HINGE_MAX_SWEEPS = 100_000

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


@dataclass(frozen=True)
class SvmConfig:
    """Hyperparameters of one solver run.

    ``clip_m`` is the prediction clipping level M.  For the hinge loss it
    must be 1; for least squares it should bound the labels, |y| <= M.
    """

    lam: float
    gamma: float
    loss: str = "ls"
    clip_m: float = 1.0
    tol: float | None = None
    max_iter: int = HINGE_MAX_SWEEPS

    def __post_init__(self):
        if self.loss not in LOSSES:
            raise InputError(f"loss must be one of {LOSSES}, got {self.loss!r}")
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise InputError(f"lam must be a positive finite real, got {self.lam!r}")
        check_bandwidth(self.gamma)
        if not (np.isfinite(self.clip_m) and self.clip_m > 0):
            raise InputError(f"clip_m must be positive, got {self.clip_m!r}")
        if self.loss == "hinge" and self.clip_m != 1.0:
            raise InputError("the hinge loss is clipped at 1; clip_m must be 1.0")
        if self.max_iter < 1:
            raise InputError("max_iter must be at least 1")


@dataclass(frozen=True)
class FittedModel:
    """A fitted kernel expansion ``f(x) = sum_i coefficients[i] * k(x, support_points[i])``.

    For the hinge loss the label is folded into the coefficient
    (``a_i = b_i * y_i`` with dual variable ``b_i`` in [0, C],
    ``C = 1/(2*lam*n)``).  Instances are immutable and safe to share
    across threads for prediction.
    """

    support_points: np.ndarray
    coefficients: np.ndarray
    gamma: float
    lam: float
    loss: str
    clip_m: float
    converged: bool = True
    gap: float = 0.0
    n_sweeps: int = 0

    def __post_init__(self):
        pts = np.array(self.support_points, dtype=float, copy=True)
        coef = np.array(self.coefficients, dtype=float, copy=True)
        pts.setflags(write=False)
        coef.setflags(write=False)
        object.__setattr__(self, "support_points", pts)
        object.__setattr__(self, "coefficients", coef)

    @property
    def n_support(self) -> int:
        return self.support_points.shape[0]


def clip(t, m):
    """Clip value(s) to the interval [-m, m]."""
    if not (np.isfinite(m) and m > 0):
        raise InputError(f"clip level must be positive, got {m!r}")
    return np.clip(t, -m, m)


def _check_training_data(X, y):
    X = as_points(X)
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != X.shape[0]:
        raise InputError(f"got {X.shape[0]} points but {y.shape[0]} labels")
    if not np.all(np.isfinite(X)):
        raise InputError("features contain non-finite values")
    if not np.all(np.isfinite(y)):
        raise InputError("labels contain non-finite values")
    return X, y


def fit_krr(X, y, lam, gamma, clip_m=None, tol=KRR_TOL) -> FittedModel:
    """Kernel ridge regression: solve ``(K + n*lam*I) a = y`` by Cholesky.

    One step of iterative refinement is applied if the residual exceeds
    ``tol`` in max norm.  ``clip_m`` defaults to ``max|y|`` (or 1 for all-zero
    labels) and only affects later clipped prediction, not the fit.

    Raises
    ------
    NumericalError
        If the Cholesky factorization fails (possible when ``n*lam``
        underflows the numerical rank floor of K).
    """
    X, y = _check_training_data(X, y)
    if not (np.isfinite(lam) and lam > 0):
        raise InputError(f"lam must be a positive finite real, got {lam!r}")
    gamma = check_bandwidth(gamma)
    n = X.shape[0]
    if clip_m is None:
        clip_m = float(np.max(np.abs(y))) if np.any(y != 0) else 1.0

    K = kernel_matrix(X, gamma)
    A = K + (n * lam) * np.eye(n)
    try:
        factor = cho_factor(A, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise NumericalError(
            f"Cholesky failed for n*lam={n * lam:.3e}, gamma={gamma:.3e}: {exc}"
        ) from exc
    alpha = cho_solve(factor, y, check_finite=False)
    resid = y - A @ alpha
    if np.max(np.abs(resid)) > tol:
        alpha = alpha + cho_solve(factor, resid, check_finite=False)
        resid = y - A @ alpha
    converged = bool(np.max(np.abs(resid)) <= tol)
    return FittedModel(
        support_points=X,
        coefficients=alpha,
        gamma=gamma,
        lam=float(lam),
        loss="ls",
        clip_m=float(clip_m),
        converged=converged,
    )


def _hinge_sweep_loops(K, y, beta, f, c_upper):
    """One cyclic coordinate-descent sweep; returns the largest step taken.

    Mutates ``beta`` and the cached decision values ``f = K @ (beta * y)``
    in place.  Written with explicit loops so numba can compile it; the
    per-element arithmetic matches the vectorized fallback exactly.
    """
    n = beta.shape[0]
    max_step = 0.0
    for i in range(n):
        g = y[i] * f[i] - 1.0
        b = beta[i] - g
        if b < 0.0:
            b = 0.0
        elif b > c_upper:
            b = c_upper
        d = b - beta[i]
        if d != 0.0:
            beta[i] = b
            dy = d * y[i]
            for j in range(n):
                f[j] += dy * K[i, j]
            if d < 0.0:
                d = -d
            if d > max_step:
                max_step = d
    return max_step


def _hinge_sweep_numpy(K, y, beta, f, c_upper):
    """Vectorized fallback with the same update order and arithmetic."""
    n = beta.shape[0]
    max_step = 0.0
    for i in range(n):
        g = y[i] * f[i] - 1.0
        b = beta[i] - g
        if b < 0.0:
            b = 0.0
        elif b > c_upper:
            b = c_upper
        d = b - beta[i]
        if d != 0.0:
            beta[i] = b
            f += (d * y[i]) * K[i]
            max_step = max(max_step, abs(d))
    return max_step


if _HAVE_NUMBA:
    _hinge_sweep = njit(cache=True)(_hinge_sweep_loops)
else:  # pragma: no cover
    _hinge_sweep = _hinge_sweep_numpy


def _hinge_gap(K, y, beta, f, lam, c_upper):
    """Duality gap of the hinge objective in the ``lam``-scaled formulation."""
    quad = float((beta * y) @ f)  # a^T K a
    hinge_sum = float(np.sum(np.maximum(0.0, 1.0 - y * f)))
    # primal_std = 0.5*quad + C*hinge_sum, dual_std = sum(beta) - 0.5*quad
    return 2.0 * lam * (quad + c_upper * hinge_sum - float(np.sum(beta)))


def fit_hinge(
    X,
    y,
    lam,
    gamma,
    tol=HINGE_GAP_TOL,
    max_iter=HINGE_MAX_SWEEPS,
    beta0=None,
) -> FittedModel:
    """Hinge-loss SVM without offset, solved by dual coordinate descent.

    Labels must be exactly -1 or +1.  The sweep order is the fixed cyclic
    order 0..n-1, so results are reproducible.  The duality gap is checked
    after every sweep; non-convergence within ``max_iter`` sweeps flags the
    returned model instead of raising.

    Parameters
    ----------
    beta0 : array_like, optional
        Warm-start dual variables, clipped into [0, C].
    """
    X, y = _check_training_data(X, y)
    if not (np.isfinite(lam) and lam > 0):
        raise InputError(f"lam must be a positive finite real, got {lam!r}")
    gamma = check_bandwidth(gamma)
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise InputError("hinge loss requires labels in {-1, +1}")
    n = X.shape[0]
    c_upper = 1.0 / (2.0 * lam * n)

    K = kernel_matrix(X, gamma)
    if beta0 is None:
        beta = np.zeros(n)
        f = np.zeros(n)
    else:
        beta = np.clip(np.asarray(beta0, dtype=float).ravel(), 0.0, c_upper).copy()
        if beta.shape[0] != n:
            raise InputError("beta0 has wrong length")
        f = K @ (beta * y)

    gap = _hinge_gap(K, y, beta, f, lam, c_upper)
    sweeps = 0
    converged = gap <= tol
    while not converged and sweeps < max_iter:
        step = _hinge_sweep(K, y, beta, f, c_upper)
        sweeps += 1
        if sweeps % 64 == 0:
            f = K @ (beta * y)  # refresh cached decision values against drift
        gap = _hinge_gap(K, y, beta, f, lam, c_upper)
        if gap <= tol or step == 0.0:
            break
    # certify with exact decision values
    f = K @ (beta * y)
    gap = _hinge_gap(K, y, beta, f, lam, c_upper)
    converged = bool(gap <= tol)
    return FittedModel(
        support_points=X,
        coefficients=beta * y,
        gamma=gamma,
        lam=float(lam),
        loss="hinge",
        clip_m=1.0,
        converged=converged,
        gap=float(gap),
        n_sweeps=sweeps,
    )


def fit_svm(X, y, config: SvmConfig) -> FittedModel:
    """Fit with the loss selected by ``config``."""
    if config.loss == "ls":
        tol = KRR_TOL if config.tol is None else config.tol
        return fit_krr(X, y, config.lam, config.gamma, clip_m=config.clip_m, tol=tol)
    tol = HINGE_GAP_TOL if config.tol is None else config.tol
    return fit_hinge(X, y, config.lam, config.gamma, tol=tol, max_iter=config.max_iter)


def predict(model: FittedModel, X, clipped: bool = False, block_size: int = 4096) -> np.ndarray:
    """Evaluate the kernel expansion at new points.

    Prediction is blocked over test points to bound memory; with
    ``clipped=True`` outputs are truncated to [-M, M] at the model's
    clipping level.
    """
    X = as_points(X)
    if X.shape[1] != model.support_points.shape[1]:
        raise InputError(
            f"dimension mismatch: model was fit in d={model.support_points.shape[1]}, "
            f"queried with d={X.shape[1]}"
        )
    out = np.empty(X.shape[0])
    for start in range(0, X.shape[0], block_size):
        block = X[start : start + block_size]
        out[start : start + block.shape[0]] = (
            cross_kernel(block, model.support_points, model.gamma) @ model.coefficients
        )
    if clipped:
        out = clip(out, model.clip_m)
    return out


def empirical_risk(predictions, labels, loss: str) -> float:
    """Mean loss of predictions against labels.

    ``loss`` is one of ``"ls"`` (squared error), ``"hinge"``
    (max{0, 1 - y*t}) or ``"class"`` (0-1 error counting ``y * sgn(t) <= 0``
    as an error, with the frozen convention ``sgn(0) = +1``).
    """
    t = np.asarray(predictions, dtype=float).ravel()
    y = np.asarray(labels, dtype=float).ravel()
    if t.shape[0] == 0:
        raise InputError("empty prediction vector")
    if t.shape[0] != y.shape[0]:
        raise InputError(f"got {t.shape[0]} predictions but {y.shape[0]} labels")
    if loss == "ls":
        return float(np.mean((y - t) ** 2))
    if loss == "hinge":
        return float(np.mean(np.maximum(0.0, 1.0 - y * t)))
    if loss == "class":
        sgn = np.where(t < 0.0, -1.0, 1.0)
        return float(np.mean(y * sgn <= 0.0))
    raise InputError(f"unknown loss {loss!r}")
