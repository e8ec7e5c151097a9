"""Synthetic distributions with known intrinsic dimension and regularity.

Regression tasks pair a support sampler (full cube, embedded cube, circle,
swiss roll, Cantor dust, Lorenz attractor) with a target function of
declared Hoelder exponent and bounded uniform label noise, so the true
conditional mean is available in closed form.  Classification tasks expose
the exact posterior probability ``eta`` together with the margin and
boundary-noise exponents they satisfy.  Everything is a deterministic
function of the seeds supplied.

The module also provides empirical smoothness functionals (iterated
differences, modulus of smoothness, and the derived seminorm
``sup_t t^-alpha * omega_s(f, t)``) and Monte-Carlo excess-risk estimation
against the known optimum.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InputError, NumericalError
from .kernel import as_points
from .solvers import FittedModel, clip, predict

__all__ = [
    "sample_embedded_cube",
    "sample_manifold",
    "sample_cantor_dust",
    "sample_lorenz",
    "HolderTarget",
    "holder_target",
    "RegressionDistribution",
    "make_regression",
    "ClassificationDistribution",
    "make_classification",
    "difference_op",
    "modulus_of_smoothness",
    "modulus_curve",
    "besov_seminorm_estimate",
    "ExcessRisk",
    "excess_risk_mc",
]

CANTOR_DIM_1D = math.log(2.0) / math.log(3.0)
LORENZ_DIM = 1.98  # box-counting dimension of the attractor at classical parameters

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# support samplers


def sample_embedded_cube(n: int, d_prime: int, d: int, rng) -> np.ndarray:
    """Uniform samples of the d'-dimensional unit cube in the first d' of d axes."""
    if not 1 <= d_prime <= d:
        raise InputError(f"need 1 <= d_prime <= d, got d_prime={d_prime}, d={d}")
    rng = np.random.default_rng(rng)
    X = np.zeros((int(n), int(d)))
    X[:, :d_prime] = rng.random((int(n), int(d_prime)))
    return X


def sample_manifold(n: int, kind: str, d: int, rng) -> np.ndarray:
    """Samples of a low-dimensional manifold embedded in R^d.

    ``circle``: radius-1/2 circle about the cube center in the first two
    coordinates (needs d >= 2), intrinsic dimension 1.  ``swiss_roll``: the
    standard ``(t cos t, h, t sin t)`` sheet rescaled axis-wise into
    [0, 1]^3 and zero-padded (needs d >= 3), intrinsic dimension 2.
    """
    rng = np.random.default_rng(rng)
    n = int(n)
    if kind == "circle":
        if d < 2:
            raise InputError(f"circle needs ambient dimension d >= 2, got {d}")
        theta = rng.uniform(0.0, 2.0 * np.pi, n)
        X = np.full((n, d), 0.5)
        X[:, 0] += 0.5 * np.cos(theta)
        X[:, 1] += 0.5 * np.sin(theta)
        return X
    if kind == "swiss_roll":
        if d < 3:
            raise InputError(f"swiss roll needs ambient dimension d >= 3, got {d}")
        t = rng.uniform(1.5 * np.pi, 4.5 * np.pi, n)
        h = rng.uniform(0.0, 21.0, n)
        raw = np.column_stack([t * np.cos(t), h, t * np.sin(t)])
        span = raw.max(axis=0) - raw.min(axis=0)
        span[span == 0.0] = 1.0
        X = np.zeros((n, d))
        X[:, :3] = (raw - raw.min(axis=0)) / span
        return X
    raise InputError(f"unknown manifold kind {kind!r}; expected 'circle' or 'swiss_roll'")


def sample_cantor_dust(n: int, levels: int, d: int, rng) -> np.ndarray:
    """Coordinate-wise middle-thirds construction truncated at ``levels``.

    Each coordinate picks one of the ``2^levels`` retained intervals
    uniformly, then a uniform point inside it.  In the infinite-level limit
    the intrinsic dimension is ``d * log(2)/log(3)`` per coordinate
    independence and self-similarity.
    """
    if levels < 1:
        raise InputError(f"need levels >= 1, got {levels}")
    rng = np.random.default_rng(rng)
    n, d, levels = int(n), int(d), int(levels)
    digits = rng.integers(0, 2, size=(n, d, levels)).astype(float)
    weights = 2.0 / np.power(3.0, np.arange(1, levels + 1, dtype=float))
    left = digits @ weights
    return left + rng.random((n, d)) * 3.0 ** (-levels)


def _lorenz_core(x, y, z, sigma, r, b, dt, burn_in, n_keep, stride, out):
    # classical fourth-order Runge-Kutta on x' = sigma(y-x), y' = x(r-z) - y, z' = xy - bz
    total = burn_in + n_keep * stride
    idx = 0
    for k in range(total):
        k1x = sigma * (y - x)
        k1y = x * (r - z) - y
        k1z = x * y - b * z
        ax = x + 0.5 * dt * k1x
        ay = y + 0.5 * dt * k1y
        az = z + 0.5 * dt * k1z
        k2x = sigma * (ay - ax)
        k2y = ax * (r - az) - ay
        k2z = ax * ay - b * az
        bx = x + 0.5 * dt * k2x
        by = y + 0.5 * dt * k2y
        bz = z + 0.5 * dt * k2z
        k3x = sigma * (by - bx)
        k3y = bx * (r - bz) - by
        k3z = bx * by - b * bz
        cx = x + dt * k3x
        cy = y + dt * k3y
        cz = z + dt * k3z
        k4x = sigma * (cy - cx)
        k4y = cx * (r - cz) - cy
        k4z = cx * cy - b * cz
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        if k >= burn_in and (k - burn_in + 1) % stride == 0:
            out[idx, 0] = x
            out[idx, 1] = y
            out[idx, 2] = z
            idx += 1
    return idx


if _HAVE_NUMBA:
    _lorenz_core = njit(cache=True)(_lorenz_core)


def sample_lorenz(
    n: int,
    sigma: float = 10.0,
    r: float = 28.0,
    b: float = 8.0 / 3.0,
    dt: float = 0.01,
    burn_in: int = 10_000,
    stride: int = 10,
    rng=None,
) -> np.ndarray:
    """Points on the Lorenz attractor, rescaled axis-wise into [0, 1]^3.

    Integrates the classical system from a randomized initial condition,
    discards ``burn_in`` steps, then emits every ``stride``-th state.  At
    the classical parameters the attractor's box-counting dimension is
    approximately 1.98.

    Raises
    ------
    NumericalError
        If the trajectory leaves the floating-point range (divergence,
        possible for non-classical parameters or too-large ``dt``).
    """
    if dt <= 0:
        raise InputError(f"need dt > 0, got {dt}")
    if burn_in < 0:
        raise InputError(f"need burn_in >= 0, got {burn_in}")
    if stride < 1:
        raise InputError(f"need stride >= 1, got {stride}")
    rng = np.random.default_rng(rng)
    x0, y0, z0 = rng.uniform([-15.0, -20.0, 5.0], [15.0, 20.0, 35.0])
    out = np.empty((int(n), 3))
    _lorenz_core(x0, y0, z0, float(sigma), float(r), float(b), float(dt),
                 int(burn_in), int(n), int(stride), out)
    if not np.all(np.isfinite(out)):
        raise NumericalError("Lorenz trajectory diverged; reduce dt or check parameters")
    lo = out.min(axis=0)
    span = out.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return (out - lo) / span


# ---------------------------------------------------------------------------
# targets


@dataclass(frozen=True)
class HolderTarget:
    """A target function with a declared Hoelder smoothness exponent.

    ``kind == "kink"`` (exponents in (0, 1]): a signed mixture
    ``sum_j c_j |<x - t_j, u_j>|^alpha`` with unit total weight; its
    Hoelder-alpha seminorm is at most 1 and it is not smoother than alpha
    along the kink hyperplanes.  ``kind == "wave"`` (exponents above 1):
    a band-limited sine mixture, infinitely differentiable with derivative
    norms controlled by the frequency radii; the declared exponent is the
    one used for rate predictions.  ``kind == "constant"`` is the zero
    function.
    """

    alpha: float
    d: int
    kind: str
    coeffs: np.ndarray
    anchors: np.ndarray
    directions: np.ndarray
    phases: np.ndarray
    sup_bound: float
    smoothness_bound: float

    def __post_init__(self):
        for name in ("coeffs", "anchors", "directions", "phases"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __call__(self, X) -> np.ndarray:
        X = as_points(X)
        if X.shape[1] != self.d:
            raise InputError(f"target lives in d={self.d}, got points with d={X.shape[1]}")
        if self.kind == "constant" or self.coeffs.size == 0:
            return np.zeros(X.shape[0])
        if self.kind == "kink":
            proj = X @ self.directions.T - np.sum(self.anchors * self.directions, axis=1)
            return np.abs(proj) ** self.alpha @ self.coeffs
        # wave
        return np.sin(X @ self.directions.T + self.phases) @ self.coeffs


def holder_target(alpha: float, d: int, seed, n_terms: int = 4) -> HolderTarget:
    """Draw a random target with smoothness exponent ``alpha`` on [0, 1]^d.

    ``n_terms == 0`` gives the zero (constant) target.  Mixture weights are
    normalized to unit total mass so the declared seminorm bound is 1 for
    kink targets and ``max_j ||w_j||^alpha`` for wave targets.
    """
    if not (np.isfinite(alpha) and alpha > 0):
        raise InputError(f"alpha must be positive, got {alpha!r}")
    if d < 1:
        raise InputError(f"need d >= 1, got {d}")
    if n_terms < 0:
        raise InputError(f"need n_terms >= 0, got {n_terms}")
    rng = np.random.default_rng(seed)
    empty = np.zeros((0, d))
    if n_terms == 0:
        return HolderTarget(alpha=float(alpha), d=int(d), kind="constant",
                            coeffs=np.zeros(0), anchors=empty, directions=empty,
                            phases=np.zeros(0), sup_bound=0.0, smoothness_bound=0.0)
    weights = 0.2 + rng.random(n_terms)
    signs = np.where(rng.random(n_terms) < 0.5, -1.0, 1.0)
    coeffs = signs * weights / np.sum(weights)
    dirs = rng.standard_normal((n_terms, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    if alpha <= 1.0:
        anchors = rng.random((n_terms, d))
        return HolderTarget(alpha=float(alpha), d=int(d), kind="kink",
                            coeffs=coeffs, anchors=anchors, directions=dirs,
                            phases=np.zeros(n_terms),
                            sup_bound=float(d) ** (alpha / 2.0), smoothness_bound=1.0)
    radii = rng.uniform(1.0, 3.0, n_terms)
    omegas = dirs * radii[:, None]
    phases = rng.uniform(0.0, 2.0 * np.pi, n_terms)
    return HolderTarget(alpha=float(alpha), d=int(d), kind="wave",
                        coeffs=coeffs, anchors=empty, directions=omegas,
                        phases=phases, sup_bound=1.0,
                        smoothness_bound=float(np.max(radii) ** alpha))


# ---------------------------------------------------------------------------
# distributions


@dataclass
class RegressionDistribution:
    """A regression task with known conditional mean and bounded labels.

    Labels are ``f*(x) + U(-noise, noise)``, so ``|y| <= clip_m`` with
    ``clip_m = sup|f*| + noise``.
    """

    kind: str
    d: int
    rho_true: float
    alpha: float
    noise: float
    clip_m: float
    target: Callable = field(repr=False)
    sampler: Callable = field(repr=False)
    params: dict = field(default_factory=dict)

    def sample_x(self, n: int, rng) -> np.ndarray:
        return self.sampler(int(n), np.random.default_rng(rng))

    def bayes(self, X) -> np.ndarray:
        return self.target(X)

    def sample(self, n: int, rng):
        rng = np.random.default_rng(rng)
        X = self.sampler(int(n), rng)
        y = self.bayes(X) + rng.uniform(-self.noise, self.noise, int(n))
        return X, y


REGRESSION_KINDS = ("cube", "circle", "swissroll", "cantor", "lorenz")


def make_regression(
    kind: str,
    d: int,
    d_prime: int | None = None,
    alpha: float = 1.0,
    n_terms: int = 4,
    target_seed: int = 0,
    noise: float = 0.1,
    levels: int = 8,
) -> RegressionDistribution:
    """Build a regression task on one of the stock supports.

    ``d_prime`` selects the intrinsic dimension of the ``cube`` kind
    (defaults to the ambient ``d``); ``levels`` is the truncation depth of
    the Cantor construction; the Lorenz support forces ``d == 3``.
    """
    if noise < 0:
        raise InputError(f"noise must be nonnegative, got {noise}")
    d = int(d)
    params = {"alpha": float(alpha), "n_terms": int(n_terms),
              "target_seed": int(target_seed), "noise": float(noise)}
    if kind == "cube":
        dp = d if d_prime is None else int(d_prime)
        if not 1 <= dp <= d:
            raise InputError(f"need 1 <= d_prime <= d, got d_prime={dp}, d={d}")
        sampler = lambda n, rng: sample_embedded_cube(n, dp, d, rng)
        rho = float(dp)
        params["d_prime"] = dp
    elif kind == "circle":
        sampler = lambda n, rng: sample_manifold(n, "circle", d, rng)
        rho = 1.0
    elif kind == "swissroll":
        sampler = lambda n, rng: sample_manifold(n, "swiss_roll", d, rng)
        rho = 2.0
    elif kind == "cantor":
        sampler = lambda n, rng: sample_cantor_dust(n, levels, d, rng)
        rho = d * CANTOR_DIM_1D
        params["levels"] = int(levels)
    elif kind == "lorenz":
        if d != 3:
            raise InputError(f"the Lorenz support lives in d=3, got d={d}")
        sampler = lambda n, rng: sample_lorenz(n, rng=rng)
        rho = LORENZ_DIM
    else:
        raise InputError(f"unknown regression kind {kind!r}; expected one of {REGRESSION_KINDS}")
    target = holder_target(alpha, d, target_seed, n_terms=n_terms)
    return RegressionDistribution(
        kind=kind, d=d, rho_true=rho, alpha=float(alpha), noise=float(noise),
        clip_m=target.sup_bound + float(noise) if target.sup_bound > 0 else max(float(noise), 1e-12),
        target=target, sampler=sampler, params=params,
    )


@dataclass
class ClassificationDistribution:
    """A binary task with exact posterior ``eta`` and declared noise exponents.

    ``q_true``/``c_star`` bound the mass near the critical level 1/2
    (margin condition); ``beta_true``/``c_star_star`` bound the weighted
    mass near the decision boundary (boundary-noise condition).  Labels are
    +1 with probability ``eta(x)``.
    """

    kind: str
    d: int
    rho_true: float
    q_true: float
    c_star: float
    beta_true: float
    c_star_star: float
    eta_fn: Callable = field(repr=False)
    sampler: Callable = field(repr=False)
    params: dict = field(default_factory=dict)

    def eta(self, X) -> np.ndarray:
        return self.eta_fn(X)

    def sample_x(self, n: int, rng) -> np.ndarray:
        return self.sampler(int(n), np.random.default_rng(rng))

    def sample(self, n: int, rng):
        rng = np.random.default_rng(rng)
        X = self.sampler(int(n), rng)
        y = np.where(rng.random(int(n)) < self.eta_fn(X), 1.0, -1.0)
        return X, y


def _sawtooth_signal(x1: np.ndarray) -> np.ndarray:
    """The piecewise-linear signal 2*eta - 1 of the sawtooth task."""
    return np.where(x1 > 0.5, 2.0 * (1.0 - x1),
                    np.where(x1 < -0.5, 2.0 * (-1.0 - x1), 2.0 * x1))


def _sample_sawtooth_x1(n: int, sigma: float, rng) -> np.ndarray:
    # inverse CDF of the symmetric density: |x|^sigma on |x| <= 1/2,
    # (1/2)^sigma on 1/2 < |x| <= 1 (continuous at 1/2)
    inner = 0.5 ** (sigma + 1.0) / (sigma + 1.0)
    outer = 0.5 ** (sigma + 1.0)
    z_half = inner + outer
    u = rng.random(n) * z_half
    absx = np.where(
        u < inner,
        ((sigma + 1.0) * u) ** (1.0 / (sigma + 1.0)),
        0.5 + (u - inner) / 0.5**sigma,
    )
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return sign * absx


def make_classification(kind: str, sigma: float | None = None,
                        zeta: float | None = None) -> ClassificationDistribution:
    """Build one of the two stock classification tasks on [-1, 1]^2.

    ``sawtooth(sigma)``: marginal density proportional to ``|x1|^sigma`` on
    the middle band ``|x1| <= 1/2`` and constant outside, with
    ``2*eta - 1`` the piecewise-linear sawtooth that vanishes at
    ``x1 in {-1, 0, 1}``.  The decision boundary sits at ``x1 = 0``, where
    the density vanishes; the crossings of the critical level near
    ``x1 = +-3/4`` set the margin exponent.  Declared exponents:
    ``q = 1``, ``beta = sigma + 2``.

    ``cusp(zeta)``: uniform on ``{|x2| <= |x1|^zeta}`` with
    ``2*eta - 1 = x1``; the classes meet only at the origin.  Declared
    exponents: ``q = zeta + 1``, ``beta = zeta + 2``.
    """
    if kind == "sawtooth":
        if sigma is None or not (np.isfinite(sigma) and sigma > 0):
            raise InputError(f"sawtooth needs sigma > 0, got {sigma!r}")
        sigma = float(sigma)

        def eta_fn(X):
            X = as_points(X)
            return 0.5 * (1.0 + _sawtooth_signal(X[:, 0]))

        def sampler(n, rng):
            x1 = _sample_sawtooth_x1(n, sigma, rng)
            x2 = rng.uniform(-1.0, 1.0, n)
            return np.column_stack([x1, x2])

        # leading small-t constant of the boundary-noise integral
        c_ss = (sigma + 1.0) * 2.0 ** (sigma + 2.0) / (sigma + 2.0) ** 2
        return ClassificationDistribution(
            kind="sawtooth", d=2, rho_true=2.0, q_true=1.0, c_star=1.0,
            beta_true=sigma + 2.0, c_star_star=c_ss,
            eta_fn=eta_fn, sampler=sampler, params={"sigma": sigma},
        )
    if kind == "cusp":
        if zeta is None or not (np.isfinite(zeta) and zeta > 0):
            raise InputError(f"cusp needs zeta > 0, got {zeta!r}")
        zeta = float(zeta)

        def eta_fn(X):
            X = as_points(X)
            return 0.5 * (1.0 + X[:, 0])

        def sampler(n, rng):
            absx = rng.random(n) ** (1.0 / (zeta + 1.0))
            sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
            x1 = sign * absx
            x2 = rng.uniform(-1.0, 1.0, n) * absx**zeta
            return np.column_stack([x1, x2])

        return ClassificationDistribution(
            kind="cusp", d=2, rho_true=2.0, q_true=zeta + 1.0, c_star=1.0,
            beta_true=zeta + 2.0, c_star_star=(zeta + 1.0) / (zeta + 2.0),
            eta_fn=eta_fn, sampler=sampler, params={"zeta": zeta},
        )
    raise InputError(f"unknown classification kind {kind!r}; expected 'sawtooth' or 'cusp'")


# ---------------------------------------------------------------------------
# smoothness functionals


def difference_op(f: Callable, x, h, s: int):
    """s-fold forward difference ``sum_j C(s,j) (-1)^(s-j) f(x + j*h)``.

    ``x`` may be a single point or an (m, d) batch; ``f`` must accept
    (m, d) arrays.  Differences of order s annihilate polynomials of
    degree below s.
    """
    if s < 1:
        raise InputError(f"need s >= 1, got {s}")
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    h = np.asarray(h, dtype=float).ravel()
    if h.shape[0] != pts.shape[1]:
        raise InputError(f"step h has dimension {h.shape[0]}, points have {pts.shape[1]}")
    acc = np.zeros(pts.shape[0])
    for j in range(s + 1):
        acc += math.comb(s, j) * (-1.0) ** (s - j) * np.asarray(f(pts + j * h), dtype=float)
    return float(acc[0]) if single else acc


def _unit_directions(d: int, k: int, rng) -> np.ndarray:
    g = rng.standard_normal((k, d))
    norms = np.linalg.norm(g, axis=1)
    degenerate = norms < 1e-12
    if np.any(degenerate):
        g[degenerate] = 0.0
        g[degenerate, 0] = 1.0
        norms[degenerate] = 1.0
    return g / norms[:, None]


def _modulus_with_directions(f, samples, s, t, directions) -> float:
    best = 0.0
    for radius in (0.25 * t, 0.5 * t, t):
        for u in directions:
            diffs = difference_op(f, samples, radius * u, s)
            best = max(best, float(np.sqrt(np.mean(diffs**2))))
    return best


def modulus_of_smoothness(f, mu_samples, s: int, t: float,
                          n_directions: int = 64, rng=None) -> float:
    """Monte-Carlo lower bound of ``sup_{||h|| <= t} ||D_h^s f||_{L2(mu)}``.

    The supremum over the ball is probed on the shells of radius t, t/2
    and t/4 along ``n_directions`` random directions; the empirical L2 norm
    runs over ``mu_samples``.
    """
    if not (np.isfinite(t) and t > 0):
        raise InputError(f"need t > 0, got {t!r}")
    samples = as_points(mu_samples, "mu_samples")
    rng = np.random.default_rng(rng)
    directions = _unit_directions(samples.shape[1], int(n_directions), rng)
    return _modulus_with_directions(f, samples, s, float(t), directions)


def modulus_curve(f, mu_samples, s: int, t_grid, n_directions: int = 64, rng=None) -> np.ndarray:
    """Modulus estimates over an increasing t-grid, sharing one direction set.

    A running maximum is applied so the curve is non-decreasing, as the
    supremum over a growing ball must be.
    """
    t_grid = np.asarray(t_grid, dtype=float).ravel()
    if t_grid.size == 0 or np.any(t_grid <= 0):
        raise InputError("t_grid must be non-empty and positive")
    if np.any(np.diff(t_grid) <= 0):
        raise InputError("t_grid must be strictly increasing")
    samples = as_points(mu_samples, "mu_samples")
    rng = np.random.default_rng(rng)
    directions = _unit_directions(samples.shape[1], int(n_directions), rng)
    vals = np.array([_modulus_with_directions(f, samples, s, t, directions) for t in t_grid])
    return np.maximum.accumulate(vals)


def besov_seminorm_estimate(f, mu_samples, alpha: float, t_grid=None,
                            n_directions: int = 64, rng=None) -> float:
    """Estimate ``sup_t t^-alpha * omega_s(f, t)`` with ``s = floor(alpha) + 1``.

    The default t-grid is logarithmic between 1e-3 and the bounding-box
    diameter of the samples.  The estimate is a Monte-Carlo lower bound of
    the seminorm; stability under doubling the sample and direction counts
    is the practical convergence check.
    """
    if not (np.isfinite(alpha) and alpha > 0):
        raise InputError(f"alpha must be positive, got {alpha!r}")
    samples = as_points(mu_samples, "mu_samples")
    s = int(math.floor(alpha)) + 1
    if t_grid is None:
        diam = float(np.linalg.norm(np.ptp(samples, axis=0)))
        if diam <= 1e-3:
            diam = 1.0
        t_grid = np.geomspace(1e-3, diam, 12)
    else:
        t_grid = np.asarray(t_grid, dtype=float).ravel()
    curve = modulus_curve(f, samples, s, t_grid, n_directions=n_directions, rng=rng)
    return float(np.max(curve / t_grid**alpha))


# ---------------------------------------------------------------------------
# excess risk


@dataclass(frozen=True)
class ExcessRisk:
    """Monte-Carlo excess-risk estimate; ``hinge`` is set for classification."""

    value: float
    hinge: float | None = None


def excess_risk_mc(model: FittedModel, dist, n_test: int, rng) -> ExcessRisk:
    """Excess risk of the clipped model against the known optimum.

    Regression: mean of ``(clip(f(x), M) - f*(x))^2`` over fresh support
    samples, an unbiased estimate of the squared-loss excess risk.
    Classification: the exact conditional excess under the known posterior,
    ``mean(|2 eta - 1| * 1{wrong sign})``, together with the hinge excess
    (both computed on the same samples, so the surrogate bound
    ``class <= hinge`` holds sample-by-sample).
    """
    if n_test <= 0:
        raise InputError(f"need n_test > 0, got {n_test}")
    rng = np.random.default_rng(rng)
    X = dist.sample_x(int(n_test), rng)
    if isinstance(dist, RegressionDistribution):
        preds = clip(predict(model, X), dist.clip_m)
        return ExcessRisk(value=float(np.mean((preds - dist.bayes(X)) ** 2)))
    if isinstance(dist, ClassificationDistribution):
        t = clip(predict(model, X), 1.0)
        signal = 2.0 * dist.eta(X) - 1.0
        pred_sign = np.where(t < 0.0, -1.0, 1.0)
        bayes_sign = np.where(signal < 0.0, -1.0, 1.0)
        cls = float(np.mean(np.abs(signal) * (pred_sign != bayes_sign)))
        eta = 0.5 * (1.0 + signal)
        cond_hinge = (eta * np.maximum(0.0, 1.0 - t)
                      + (1.0 - eta) * np.maximum(0.0, 1.0 + t)
                      - (1.0 - np.abs(signal)))
        return ExcessRisk(value=cls, hinge=float(np.mean(cond_hinge)))
    raise InputError(f"unsupported distribution type {type(dist).__name__}")
