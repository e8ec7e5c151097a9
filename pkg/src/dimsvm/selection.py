"""Hyperparameter candidate grids and train/validation selection.

Candidate bandwidths and regularization weights are powers ``n^{-a}`` with
the exponents ``a`` drawn from small epsilon-nets of an interval.  The net
radius ``1/log(n)`` makes the grids grow only logarithmically in the sample
size while still tracking the (unknown) optimal exponents to within the
resolution that matters for rates.

``tv_select`` splits the data into a training front half and a validation
back half, fits every grid candidate on the front half, and returns the
candidate with the smallest clipped validation risk.  The winning model is
the one trained on the front half; there is no refit on the full data.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError
from .solvers import FittedModel, clip, empirical_risk, fit_hinge, fit_krr, predict

__all__ = ["ExponentNet", "HyperGrid", "TvResult", "exponent_net", "build_grids", "tv_select"]


@dataclass(frozen=True)
class ExponentNet:
    """A finite set of points covering an interval with radius-``radius`` balls.

    Points are stored in the descending construction order; the mandatory
    upper endpoint is ``points[0]``.
    """

    points: np.ndarray
    radius: float
    lo: float
    hi: float
    half_open: bool

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def covers(self, values) -> np.ndarray:
        """Boolean mask: is each value within ``radius`` of some net point."""
        values = np.asarray(values, dtype=float).ravel()
        dist = np.min(np.abs(values[:, None] - self.points[None, :]), axis=1)
        return dist <= self.radius + 1e-12


def exponent_net(lo: float, hi: float, epsilon: float, half_open: bool = False) -> ExponentNet:
    """Greedy downward epsilon-net of ``(lo, hi]`` or ``[lo, hi]`` containing ``hi``.

    Points are ``hi, hi - 2*eps, hi - 4*eps, ...`` with the final point
    clamped to ``lo + eps`` (half-open) or ``lo`` (closed) so the low end
    stays covered.  A degenerate interval yields the singleton ``{hi}``.
    """
    if not (np.isfinite(epsilon) and epsilon > 0):
        raise InputError(f"epsilon must be positive, got {epsilon!r}")
    if hi < lo:
        raise InputError(f"need hi >= lo, got [{lo}, {hi}]")
    k_last = math.ceil(max(0.0, hi - lo - epsilon) / (2.0 * epsilon))
    points = [hi - 2.0 * k * epsilon for k in range(k_last + 1)]
    if k_last > 0:
        floor_val = lo + epsilon if half_open else lo
        points[-1] = max(points[-1], floor_val)
    return ExponentNet(
        points=np.asarray(points), radius=float(epsilon), lo=float(lo), hi=float(hi),
        half_open=half_open,
    )


@dataclass(frozen=True)
class HyperGrid:
    """Candidate sets ``gammas`` and ``lambdas`` for a sample size ``n``."""

    gammas: np.ndarray
    lambdas: np.ndarray
    n: int
    mode: str
    gamma_net: ExponentNet | None = None
    lambda_net: ExponentNet | None = None

    def __post_init__(self):
        for name in ("gammas", "lambdas"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            if arr.size == 0:
                raise InputError(f"{name} must be non-empty")
            if np.any(arr <= 0) or np.any(arr > 1):
                raise InputError(f"{name} must lie in (0, 1]")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_candidates(self) -> int:
        return self.gammas.size * self.lambdas.size

    def pairs(self):
        """All (lam, gamma) candidates in a fixed deterministic order."""
        for lam in self.lambdas:
            for gamma in self.gammas:
                yield float(lam), float(gamma)


def build_grids(n: int, d: int, mode: str = "regression",
                singleton_lambda: bool = False) -> HyperGrid:
    """Build the candidate grids for sample size ``n`` in ambient dimension ``d``.

    The bandwidth exponents form a ``1/log(n)``-net of (0, 1] containing 1,
    so ``1/n`` is always a candidate bandwidth.  The regularization
    exponents form a net of [1, d] (regression) or (0, d] (classification)
    containing d, so ``n^-d`` is always a candidate weight.  With
    ``singleton_lambda`` the regularization grid is just ``{n^-d}``.
    """
    if mode not in ("regression", "classification"):
        raise InputError(f"mode must be 'regression' or 'classification', got {mode!r}")
    n = int(n)
    if n < 3:
        raise InputError(f"need n >= 3 so the net radius 1/log(n) is at most 1, got {n}")
    if d < 1:
        raise InputError(f"need d >= 1, got {d}")
    eps = 1.0 / math.log(n)
    a_net = exponent_net(0.0, 1.0, eps, half_open=True)
    gammas = np.power(float(n), -a_net.points)
    if singleton_lambda:
        b_net = None
        lambdas = np.array([float(n) ** (-float(d))])
    else:
        if mode == "regression":
            b_net = exponent_net(1.0, float(d), eps, half_open=False)
        else:
            b_net = exponent_net(0.0, float(d), eps, half_open=True)
        lambdas = np.power(float(n), -b_net.points)
    return HyperGrid(gammas=gammas, lambdas=lambdas, n=n, mode=mode,
                     gamma_net=a_net, lambda_net=b_net)


@dataclass
class TvResult:
    """Outcome of train/validation selection."""

    lam: float
    gamma: float
    model: FittedModel
    val_risk: float
    n_train: int
    records: list = field(default_factory=list)  # (lam, gamma, val_risk, converged)
    models: dict | None = None

    @property
    def best_pair(self) -> tuple:
        return (self.lam, self.gamma)


def tv_select(
    X,
    y,
    grid: HyperGrid,
    loss: str = "ls",
    clip_m: float | None = None,
    tol: float | None = None,
    max_iter: int = 100_000,
    keep_models: bool = False,
) -> TvResult:
    """Train on the front half, select hyperparameters on the back half.

    The split is order-preserving with ``m = n//2 + 1`` training points;
    shuffling, if wanted, is the caller's responsibility.  Validation risk
    is the mean loss of clipped predictions on the back half.  Ties are
    broken toward stronger regularization: larger ``lam``, then larger
    ``gamma``.  Candidates whose solve fails numerically are recorded with
    infinite risk and skipped.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    n = y.shape[0]
    if n < 4:
        raise InputError(f"need n >= 4 so both halves are non-empty, got {n}")
    if loss not in ("ls", "hinge"):
        raise InputError(f"loss must be 'ls' or 'hinge', got {loss!r}")
    if loss == "hinge":
        if clip_m is None:
            clip_m = 1.0
        elif clip_m != 1.0:
            raise InputError("the hinge loss is clipped at 1; clip_m must be 1.0")
    elif clip_m is None:
        clip_m = float(np.max(np.abs(y))) if np.any(y != 0) else 1.0

    m = n // 2 + 1
    X1, y1 = X[:m], y[:m]
    X2, y2 = X[m:], y[m:]

    best_key = None
    best = None
    records = []
    models = {} if keep_models else None
    for lam, gamma in grid.pairs():
        try:
            if loss == "ls":
                model = fit_krr(X1, y1, lam, gamma, clip_m=clip_m,
                                tol=1e-10 if tol is None else tol)
            else:
                model = fit_hinge(X1, y1, lam, gamma,
                                  tol=1e-6 if tol is None else tol, max_iter=max_iter)
        except NumericalError:
            records.append((lam, gamma, math.inf, False))
            continue
        risk = empirical_risk(clip(predict(model, X2), clip_m), y2, loss)
        records.append((lam, gamma, risk, model.converged))
        if keep_models:
            models[(lam, gamma)] = model
        key = (risk, -lam, -gamma)
        if best_key is None or key < best_key:
            best_key = key
            best = (lam, gamma, model, risk)
    if best is None:
        raise NumericalError("every grid candidate failed to solve")
    lam, gamma, model, risk = best
    return TvResult(lam=lam, gamma=gamma, model=model, val_risk=risk,
                    n_train=m, records=records, models=models)
