"""Experiment orchestration: learning-curve sweeps and rate-exponent fits.

A plan fixes a synthetic task, a grid of sample sizes, a replication count
and a master seed; ``run_learning_curve`` executes it and is a pure
function of the plan (every random stream is derived from the master seed
and the (n, replication) pair).  ``fit_rate_exponent`` turns the curve into
an empirical decay exponent for comparison with ``theoretical_exponent``.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .datagen import excess_risk_mc, make_classification, make_regression
from .errors import InputError, NumericalError
from .selection import HyperGrid, build_grids, tv_select

__all__ = [
    "theoretical_exponent",
    "ExperimentPlan",
    "plan_from_file",
    "build_distribution",
    "LearningCurve",
    "run_learning_curve",
    "RateFit",
    "fit_rate_exponent",
    "make_report",
    "report_json",
]

GRID_MODES = ("tv", "tv-singleton", "fixed")


def theoretical_exponent(mode: str, alpha: float | None = None, beta: float | None = None,
                         q: float | None = None, rho: float | None = None) -> float:
    """Predicted excess-risk decay exponent r in ``n^-r`` (log factors aside).

    Regression with smoothness ``alpha`` on a support of intrinsic
    dimension ``rho``: ``2a / (2a + rho)``.  Classification with boundary
    exponent ``beta`` and margin exponent ``q``:
    ``b(q+1) / (b(q+2) + rho(q+1))``, with the limit ``b / (b + rho)`` for
    ``q = inf``.
    """
    if rho is None or not (np.isfinite(rho) and rho > 0):
        raise InputError(f"need intrinsic dimension rho > 0, got {rho!r}")
    if mode == "regression":
        if alpha is None or not (np.isfinite(alpha) and alpha > 0):
            raise InputError(f"regression needs alpha > 0, got {alpha!r}")
        return 2.0 * alpha / (2.0 * alpha + rho)
    if mode == "classification":
        if beta is None or not (np.isfinite(beta) and beta > 0):
            raise InputError(f"classification needs beta > 0, got {beta!r}")
        if q is None or q < 0:
            raise InputError(f"classification needs q >= 0, got {q!r}")
        if math.isinf(q):
            return beta / (beta + rho)
        return beta * (q + 1.0) / (beta * (q + 2.0) + rho * (q + 1.0))
    raise InputError(f"mode must be 'regression' or 'classification', got {mode!r}")


@dataclass
class ExperimentPlan:
    """Complete description of one learning-curve experiment."""

    kind: str
    d: int
    mode: str            # "regression" | "classification"
    n_grid: tuple
    replications: int = 1
    master_seed: int = 0
    n_test: int = 10_000
    grid_mode: str = "tv"    # "tv" | "tv-singleton" | "fixed"
    # task parameters (used by the kinds that need them)
    d_prime: int | None = None
    alpha: float | None = None
    sigma: float | None = None
    zeta: float | None = None
    levels: int = 8
    noise: float = 0.1
    target_seed: int = 0
    n_terms: int = 4
    rho: float | None = None   # intrinsic dimension for theory / fixed schedule

    def __post_init__(self):
        if self.mode not in ("regression", "classification"):
            raise InputError(f"mode must be 'regression' or 'classification', got {self.mode!r}")
        if self.grid_mode not in GRID_MODES:
            raise InputError(f"grid_mode must be one of {GRID_MODES}, got {self.grid_mode!r}")
        ns = tuple(int(n) for n in self.n_grid)
        if len(ns) == 0 or any(n < 4 for n in ns):
            raise InputError("n_grid must be non-empty with every n >= 4")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise InputError("n_grid must be strictly increasing")
        self.n_grid = ns
        if self.replications < 1:
            raise InputError("replications must be at least 1")
        if self.n_test < 1:
            raise InputError("n_test must be at least 1")

    @property
    def loss(self) -> str:
        return "ls" if self.mode == "regression" else "hinge"


def build_distribution(plan: ExperimentPlan):
    """Instantiate the plan's data-generating distribution."""
    if plan.mode == "regression":
        return make_regression(
            plan.kind, plan.d, d_prime=plan.d_prime,
            alpha=1.0 if plan.alpha is None else plan.alpha,
            n_terms=plan.n_terms, target_seed=plan.target_seed,
            noise=plan.noise, levels=plan.levels,
        )
    if plan.kind == "sawtooth":
        return make_classification("sawtooth", sigma=plan.sigma)
    if plan.kind == "cusp":
        return make_classification("cusp", zeta=plan.zeta)
    raise InputError(f"classification kind must be 'sawtooth' or 'cusp', got {plan.kind!r}")


def _plan_rho(plan: ExperimentPlan, dist) -> float:
    return float(plan.rho) if plan.rho is not None else float(dist.rho_true)


def _fixed_schedule(plan: ExperimentPlan, dist, n: int) -> tuple:
    """The rate-optimal (lam, gamma) for sample size n, given the true parameters."""
    rho = _plan_rho(plan, dist)
    if plan.mode == "regression":
        alpha = dist.alpha
        a = 1.0 / (2.0 * alpha + rho)
        b = (2.0 * alpha + plan.d) / (2.0 * alpha + rho)
    else:
        beta, q = dist.beta_true, dist.q_true
        denom = beta * (q + 2.0) + rho * (q + 1.0)
        a = (q + 1.0) / denom
        b = (plan.d + beta) * (q + 1.0) / denom
    gamma = min(float(n) ** (-a), 1.0)
    lam = min(float(n) ** (-b), 1.0)
    return lam, gamma


def _grid_for(plan: ExperimentPlan, dist, n: int) -> HyperGrid:
    if plan.grid_mode == "tv":
        return build_grids(n, plan.d, plan.mode)
    if plan.grid_mode == "tv-singleton":
        return build_grids(n, plan.d, plan.mode, singleton_lambda=True)
    lam, gamma = _fixed_schedule(plan, dist, n)
    return HyperGrid(gammas=np.array([gamma]), lambdas=np.array([lam]),
                     n=int(n), mode=plan.mode)


def _replication_rng(master_seed: int, n: int, rep: int, stream: int):
    return np.random.default_rng(np.random.SeedSequence((int(master_seed), int(n),
                                                         int(rep), int(stream))))


@dataclass
class LearningCurve:
    """Per-n excess-risk statistics with the raw replication values."""

    ns: tuple
    means: tuple
    medians: tuple
    stds: tuple
    values: tuple          # tuple of per-n tuples, one value per replication
    hinge_values: tuple | None = None
    selections: tuple = ()   # per-n tuple of (lam, gamma) selected per replication
    n_clamped: int = 0
    n_unconverged: int = 0


def run_learning_curve(plan: ExperimentPlan) -> LearningCurve:
    """Execute the plan: sample, select, fit, and score for every (n, replication).

    Fully determined by the plan (master seed included).  Solver
    non-convergence is counted, not fatal; negative Monte-Carlo estimates
    (impossible for the built-in estimators, guarded anyway) are clamped
    at 0 and counted.
    """
    dist = build_distribution(plan)
    ns, means, medians, stds = [], [], [], []
    all_values, all_hinge, all_sel = [], [], []
    n_clamped = 0
    n_unconverged = 0
    for n in plan.n_grid:
        vals, hinges, sels = [], [], []
        for rep in range(plan.replications):
            data_rng = _replication_rng(plan.master_seed, n, rep, 0)
            X, y = dist.sample(n, data_rng)
            grid = _grid_for(plan, dist, n)
            clip_m = dist.clip_m if plan.mode == "regression" else 1.0
            result = tv_select(X, y, grid, loss=plan.loss, clip_m=clip_m)
            if not result.model.converged:
                n_unconverged += 1
            test_rng = _replication_rng(plan.master_seed, n, rep, 1)
            excess = excess_risk_mc(result.model, dist, plan.n_test, test_rng)
            value = excess.value
            if value < 0.0:
                value = 0.0
                n_clamped += 1
            vals.append(value)
            hinges.append(excess.hinge)
            sels.append((result.lam, result.gamma))
        ns.append(int(n))
        means.append(float(np.mean(vals)))
        medians.append(float(np.median(vals)))
        stds.append(float(np.std(vals)))
        all_values.append(tuple(vals))
        all_hinge.append(tuple(hinges))
        all_sel.append(tuple(sels))
    hinge_out = None if plan.mode == "regression" else tuple(all_hinge)
    return LearningCurve(
        ns=tuple(ns), means=tuple(means), medians=tuple(medians), stds=tuple(stds),
        values=tuple(all_values), hinge_values=hinge_out, selections=tuple(all_sel),
        n_clamped=n_clamped, n_unconverged=n_unconverged,
    )


@dataclass(frozen=True)
class RateFit:
    """Empirical decay exponent of a learning curve."""

    exponent: float
    r_squared: float
    n_used: int
    log_corrected_exponent: float


def fit_rate_exponent(ns, mean_excess) -> RateFit:
    """Least-squares slope of log(mean excess) against log(n).

    Rows with non-positive mean excess are dropped; at least three usable
    rows are required.  The reported exponent is the negated slope.  A
    diagnostic joint fit on (log n, log log n) is included because the
    finite-sample curves carry polylogarithmic factors that bias the pure
    power-law slope; it is not used for acceptance decisions.
    """
    ns = np.asarray(ns, dtype=float).ravel()
    means = np.asarray(mean_excess, dtype=float).ravel()
    if ns.shape != means.shape:
        raise InputError("ns and mean_excess must have equal length")
    usable = (means > 0.0) & np.isfinite(means) & (ns > 1.0)
    if int(np.sum(usable)) < 3:
        raise NumericalError(
            f"need at least 3 rows with positive mean excess, got {int(np.sum(usable))}"
        )
    x = np.log(ns[usable])
    z = np.log(means[usable])
    slope, intercept = np.polyfit(x, z, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((z - fitted) ** 2))
    ss_tot = float(np.sum((z - np.mean(z)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    # joint fit z ~ c0 + c1*log(n) + c2*log(log(n))
    design = np.column_stack([np.ones_like(x), x, np.log(x)])
    coef, *_ = np.linalg.lstsq(design, z, rcond=None)
    return RateFit(exponent=float(-slope), r_squared=float(r_squared),
                   n_used=int(np.sum(usable)), log_corrected_exponent=float(-coef[1]))


def make_report(plan: ExperimentPlan, curve: LearningCurve, rate: RateFit | None = None) -> dict:
    """Assemble the full JSON-ready report: plan echo, curve, exponents."""
    dist = build_distribution(plan)
    rho = _plan_rho(plan, dist)
    if plan.mode == "regression":
        theory = theoretical_exponent("regression", alpha=dist.alpha, rho=rho)
    else:
        theory = theoretical_exponent("classification", beta=dist.beta_true,
                                      q=dist.q_true, rho=rho)
    report = {
        "library_version": __version__,
        "plan": asdict(plan),
        "theoretical_exponent": theory,
        "rho": rho,
        "curve": {
            "n": list(curve.ns),
            "mean_excess": list(curve.means),
            "median_excess": list(curve.medians),
            "std_excess": list(curve.stds),
            "values": [list(v) for v in curve.values],
            "selections": [[list(pair) for pair in sel] for sel in curve.selections],
            "n_clamped": curve.n_clamped,
            "n_unconverged": curve.n_unconverged,
        },
    }
    if curve.hinge_values is not None:
        report["curve"]["hinge_values"] = [list(v) for v in curve.hinge_values]
    if rate is not None:
        report["empirical_exponent"] = rate.exponent
        report["r_squared"] = rate.r_squared
        report["log_corrected_exponent"] = rate.log_corrected_exponent
    return report


def report_json(report: dict) -> str:
    """Deterministic JSON encoding (sorted keys, repr-exact floats)."""
    return json.dumps(report, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# plan files: flat key = value lines, '#' comments


_PLAN_INT_KEYS = {"d", "replications", "master_seed", "n_test", "d_prime",
                  "levels", "target_seed", "n_terms"}
_PLAN_FLOAT_KEYS = {"alpha", "sigma", "zeta", "noise", "rho"}
_PLAN_STR_KEYS = {"kind", "mode", "grid_mode"}


def plan_from_file(path) -> ExperimentPlan:
    """Parse a flat ``key = value`` plan file into an ExperimentPlan."""
    fields = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key == "n_grid":
                try:
                    fields[key] = tuple(int(tok) for tok in value.replace(",", " ").split())
                except ValueError as exc:
                    raise InputError(f"{path}:{lineno}: bad n_grid {value!r}") from exc
            elif key in _PLAN_INT_KEYS:
                fields[key] = int(value)
            elif key in _PLAN_FLOAT_KEYS:
                fields[key] = float(value)
            elif key in _PLAN_STR_KEYS:
                fields[key] = value
            else:
                raise InputError(f"{path}:{lineno}: unknown plan key {key!r}")
    missing = {"kind", "d", "mode", "n_grid"} - fields.keys()
    if missing:
        raise InputError(f"plan file {path} is missing keys: {sorted(missing)}")
    return ExperimentPlan(**fields)
