"""Gaussian-kernel SVMs adaptive to the intrinsic dimension of the data.

The package bundles four pieces that together let learning-rate exponents
be measured empirically on synthetic tasks whose intrinsic dimension and
regularity are known analytically:

- clipped Gaussian-kernel solvers for the squared and hinge losses
  (``kernel``, ``solvers``);
- logarithmically-sized hyperparameter grids and train/validation
  selection (``selection``);
- box-counting dimension estimation for point clouds (``geometry``);
- synthetic distribution families, smoothness functionals, and a
  learning-curve harness (``datagen``, ``harness``).

A command-line front end for dataset generation, fitting, dimension
estimation and learning-curve experiments lives in ``dimsvm.cli``.
"""

__version__ = "0.1.0"

from .errors import InputError, NumericalError
from .kernel import cross_kernel, gaussian_eval, kernel_matrix
from .solvers import (
    FittedModel,
    SvmConfig,
    clip,
    empirical_risk,
    fit_hinge,
    fit_krr,
    fit_svm,
    predict,
)
from .selection import ExponentNet, HyperGrid, TvResult, build_grids, exponent_net, tv_select
from .geometry import (
    CoveringProfile,
    DimensionEstimate,
    boxdim_estimate,
    covering_count,
    covering_profile,
)
from .datagen import (
    ClassificationDistribution,
    ExcessRisk,
    HolderTarget,
    RegressionDistribution,
    besov_seminorm_estimate,
    difference_op,
    excess_risk_mc,
    holder_target,
    make_classification,
    make_regression,
    modulus_curve,
    modulus_of_smoothness,
    sample_cantor_dust,
    sample_embedded_cube,
    sample_lorenz,
    sample_manifold,
)
from .harness import (
    ExperimentPlan,
    LearningCurve,
    RateFit,
    build_distribution,
    fit_rate_exponent,
    make_report,
    plan_from_file,
    report_json,
    run_learning_curve,
    theoretical_exponent,
)

__all__ = [
    "__version__",
    "InputError",
    "NumericalError",
    "gaussian_eval",
    "kernel_matrix",
    "cross_kernel",
    "SvmConfig",
    "FittedModel",
    "clip",
    "fit_krr",
    "fit_hinge",
    "fit_svm",
    "predict",
    "empirical_risk",
    "ExponentNet",
    "HyperGrid",
    "TvResult",
    "exponent_net",
    "build_grids",
    "tv_select",
    "CoveringProfile",
    "DimensionEstimate",
    "covering_count",
    "covering_profile",
    "boxdim_estimate",
    "RegressionDistribution",
    "ClassificationDistribution",
    "HolderTarget",
    "ExcessRisk",
    "holder_target",
    "make_regression",
    "make_classification",
    "sample_embedded_cube",
    "sample_manifold",
    "sample_cantor_dust",
    "sample_lorenz",
    "difference_op",
    "modulus_of_smoothness",
    "modulus_curve",
    "besov_seminorm_estimate",
    "excess_risk_mc",
    "ExperimentPlan",
    "LearningCurve",
    "RateFit",
    "theoretical_exponent",
    "build_distribution",
    "run_learning_curve",
    "fit_rate_exponent",
    "make_report",
    "report_json",
    "plan_from_file",
]
