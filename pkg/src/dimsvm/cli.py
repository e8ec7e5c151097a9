"""Command-line front end.

Subcommands: ``generate`` (synthetic datasets as CSV plus a JSON metadata
sidecar), ``fit`` (single model fit to a JSON model file), ``tvsvm``
(train/validation hyperparameter selection report), ``boxdim``
(box-counting dimension of a CSV point cloud), ``learning-curve`` (run a
plan file) and ``rate-fit`` (decay exponent of a stored curve).

Datasets are CSV with header ``x1,...,xd,y``; numeric output is printed
with 17 significant digits so reruns are byte-comparable.  Exit status is
0 on success, 1 on input error, 2 on numerical failure.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InputError, NumericalError
from .geometry import boxdim_estimate, covering_profile
from .harness import (
    fit_rate_exponent,
    make_report,
    plan_from_file,
    report_json,
    run_learning_curve,
    theoretical_exponent,
)
from .datagen import make_classification, make_regression
from .selection import build_grids, tv_select
from .solvers import FittedModel, fit_hinge, fit_krr

__all__ = ["main"]

CLASSIFICATION_KINDS = ("sawtooth", "cusp")


def _write_dataset(path, X, y):
    header = ",".join(f"x{i + 1}" for i in range(X.shape[1])) + ",y"
    np.savetxt(path, np.column_stack([X, y]), fmt="%.17g", delimiter=",",
               header=header, comments="")


def _read_dataset(path, need_labels=True):
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        columns = [c.strip() for c in fh.readline().strip().split(",")]
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(columns):
        raise InputError(f"{path}: header names {len(columns)} columns, rows have {data.shape[1]}")
    if columns and columns[-1] == "y":
        X, y = data[:, :-1], data[:, -1]
    else:
        X, y = data, None
    if need_labels and y is None:
        raise InputError(f"{path}: expected a trailing label column named 'y'")
    return X, y


def _write_json(path, payload: dict):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def _model_to_dict(model: FittedModel) -> dict:
    return {
        "loss": model.loss,
        "lambda": model.lam,
        "gamma": model.gamma,
        "clip_m": model.clip_m,
        "support_points": model.support_points.tolist(),
        "coefficients": model.coefficients.tolist(),
        "converged": model.converged,
        "gap": model.gap,
        "n_sweeps": model.n_sweeps,
    }


def _cmd_generate(args) -> int:
    n, seed = args.n, args.seed
    if args.kind in CLASSIFICATION_KINDS:
        if args.d not in (None, 2):
            raise InputError(f"kind {args.kind!r} lives in d=2, got --d {args.d}")
        dist = make_classification(args.kind, sigma=args.sigma, zeta=args.zeta)
        meta_reg = {"q_true": dist.q_true, "beta_true": dist.beta_true,
                    "c_star": dist.c_star, "c_star_star": dist.c_star_star}
        clip_m = 1.0
    else:
        d = args.d
        if d is None:
            d = 3 if args.kind == "lorenz" else 2
        dist = make_regression(args.kind, d, d_prime=args.dprime, alpha=args.alpha,
                               n_terms=args.terms, target_seed=args.target_seed,
                               noise=args.noise, levels=args.levels)
        meta_reg = {"alpha": dist.alpha}
        clip_m = dist.clip_m
    X, y = dist.sample(n, np.random.default_rng(seed))
    _write_dataset(args.out, X, y)
    meta = {
        "kind": dist.kind,
        "n": int(n),
        "d": int(dist.d),
        "seed": int(seed),
        "rho_true": dist.rho_true,
        "clip_m": clip_m,
        "params": dist.params,
        "library_version": __version__,
    }
    meta.update(meta_reg)
    _write_json(Path(args.out).with_suffix(".meta.json"), meta)
    return 0


def _cmd_fit(args) -> int:
    X, y = _read_dataset(args.infile)
    if args.loss == "ls":
        model = fit_krr(X, y, args.lam, args.gamma, clip_m=args.clip)
    else:
        if args.clip not in (None, 1.0):
            raise InputError("the hinge loss is clipped at 1; omit --clip or pass 1")
        model = fit_hinge(X, y, args.lam, args.gamma)
    _write_json(args.model_out, _model_to_dict(model))
    return 0


def _cmd_tvsvm(args) -> int:
    X, y = _read_dataset(args.infile)
    mode = args.mode
    if mode is None:
        mode = "regression" if args.loss == "ls" else "classification"
    n, d = X.shape
    grid = build_grids(n, d, mode, singleton_lambda=args.singleton_lambda)
    result = tv_select(X, y, grid, loss=args.loss)
    report = {
        "library_version": __version__,
        "n": int(n),
        "d": int(d),
        "mode": mode,
        "loss": args.loss,
        "selected": {"lambda": result.lam, "gamma": result.gamma},
        "validation_risk": result.val_risk,
        "n_train": result.n_train,
        "grid": {"gammas": grid.gammas.tolist(), "lambdas": grid.lambdas.tolist()},
        "candidates": [
            {"lambda": lam, "gamma": gamma, "validation_risk": risk, "converged": conv}
            for lam, gamma, risk, conv in result.records
        ],
        "model": _model_to_dict(result.model),
    }
    _write_json(args.report, report)
    return 0


def _cmd_boxdim(args) -> int:
    X, _ = _read_dataset(args.infile, need_labels=False)
    profile = covering_profile(X, k_min=args.kmin, k_max=args.kmax, base=args.base)
    estimate = boxdim_estimate(profile)
    payload = {
        "rho_hat": estimate.rho_hat,
        "c_dim_hat": estimate.c_dim_hat,
        "r_squared": estimate.r_squared,
        "scales_used": estimate.scales_used.tolist(),
        "profile": {
            "scales": profile.scales.tolist(),
            "counts": profile.counts.tolist(),
            "n_points": profile.n_points,
        },
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_learning_curve(args) -> int:
    plan = plan_from_file(args.plan)
    curve = run_learning_curve(plan)
    try:
        rate = fit_rate_exponent(curve.ns, curve.means)
    except NumericalError:
        rate = None  # curves with <3 usable rows still get a report
    report = make_report(plan, curve, rate)
    Path(args.out).write_text(report_json(report) + "\n", encoding="utf-8")
    if args.csv:
        rows = np.column_stack([curve.ns, curve.means, curve.medians, curve.stds])
        np.savetxt(args.csv, rows, fmt="%.17g", delimiter=",",
                   header="n,mean_excess,median_excess,std_excess", comments="")
    return 0


def _cmd_rate_fit(args) -> int:
    path = Path(args.infile)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        columns = [c.strip() for c in fh.readline().strip().split(",")]
    if "n" not in columns or "mean_excess" not in columns:
        raise InputError(f"{path}: need columns 'n' and 'mean_excess', got {columns}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    ns = data[:, columns.index("n")]
    means = data[:, columns.index("mean_excess")]
    rate = fit_rate_exponent(ns, means)
    payload = {
        "empirical_exponent": rate.exponent,
        "r_squared": rate.r_squared,
        "log_corrected_exponent": rate.log_corrected_exponent,
        "n_used": rate.n_used,
    }
    if args.alpha is not None or args.beta is not None:
        if args.rho is None:
            raise InputError("--rho is required alongside --alpha or --beta/--q")
        if args.alpha is not None:
            payload["theoretical_exponent"] = theoretical_exponent(
                "regression", alpha=args.alpha, rho=args.rho)
        else:
            if args.q is None:
                raise InputError("--q is required alongside --beta")
            payload["theoretical_exponent"] = theoretical_exponent(
                "classification", beta=args.beta, q=args.q, rho=args.rho)
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimsvm",
        description="Gaussian-kernel SVMs, box-counting dimension, and rate experiments",
    )
    parser.add_argument("--version", action="version", version=f"dimsvm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset as CSV + metadata JSON")
    p.add_argument("--kind", required=True,
                   choices=["cube", "circle", "swissroll", "cantor", "lorenz",
                            "sawtooth", "cusp"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None,
                   help="ambient dimension (default: 2; lorenz is fixed at 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--dprime", type=int, default=None, help="intrinsic dimension of 'cube'")
    p.add_argument("--alpha", type=float, default=1.0, help="target smoothness exponent")
    p.add_argument("--noise", type=float, default=0.1, help="uniform label-noise half-width")
    p.add_argument("--terms", type=int, default=4, help="number of target mixture terms")
    p.add_argument("--target-seed", type=int, default=0)
    p.add_argument("--levels", type=int, default=8, help="Cantor truncation depth")
    p.add_argument("--sigma", type=float, default=None, help="sawtooth density exponent")
    p.add_argument("--zeta", type=float, default=None, help="cusp boundary exponent")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("fit", help="fit one model and store it as JSON")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--loss", choices=["ls", "hinge"], required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--clip", type=float, default=None,
                   help="clipping level M (default: max|y| for ls, 1 for hinge)")
    p.add_argument("--model-out", dest="model_out", required=True)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("tvsvm", help="train/validation hyperparameter selection")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--loss", choices=["ls", "hinge"], required=True)
    p.add_argument("--mode", choices=["regression", "classification"], default=None)
    p.add_argument("--singleton-lambda", action="store_true",
                   help="use the single candidate n^-d for the regularization weight")
    p.add_argument("--report", required=True)
    p.set_defaults(func=_cmd_tvsvm)

    p = sub.add_parser("boxdim", help="box-counting dimension of a CSV point cloud")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=7)
    p.add_argument("--base", type=float, default=2.0, help="scale base (eps_k = base^-k)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_boxdim)

    p = sub.add_parser("learning-curve", help="run a plan file end to end")
    p.add_argument("--plan", required=True)
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--csv", default=None, help="also write the curve as plot-ready CSV")
    p.set_defaults(func=_cmd_learning_curve)

    p = sub.add_parser("rate-fit", help="fit the decay exponent of a stored curve")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_rate_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; fold those into input errors
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
