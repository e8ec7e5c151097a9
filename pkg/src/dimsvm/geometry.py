"""Covering counts and box-counting dimension estimation for point clouds.

``covering_count`` counts occupied cells of the axis-aligned grid with cell
side ``2*eps`` anchored at the origin; each cell is a sup-norm ball of
radius ``eps`` about its center.  This upper-bounds the minimal sup-norm
covering number of the point set and is within a factor ``2^d`` of it.
Exact minimal covering is NP-hard in general; the bounded multiplicative
gap shifts only the intercept of the log-log fit, not the slope, so the
dimension estimate is unaffected while the reported constant is
approximate.

``boxdim_estimate`` fits ``log N`` against ``log(1/eps)`` by ordinary least
squares over a scale window cleaned of the two finite-sample artifacts:
counts saturating near the number of points (fine end) and counts frozen by
scales above the data diameter (coarse end).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError
from .kernel import as_points

__all__ = ["CoveringProfile", "DimensionEstimate", "covering_count", "covering_profile",
           "boxdim_estimate"]


@dataclass(frozen=True)
class CoveringProfile:
    """Occupied-cell counts at a decreasing sequence of scales."""

    scales: np.ndarray
    counts: np.ndarray
    n_points: int | None = None

    def __post_init__(self):
        scales = np.array(self.scales, dtype=float, copy=True)
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if scales.shape != counts.shape or scales.ndim != 1:
            raise InputError("scales and counts must be 1-D arrays of equal length")
        if np.any(scales <= 0):
            raise InputError("scales must be positive")
        if np.any(np.diff(scales) >= 0):
            raise InputError("scales must be strictly decreasing")
        if np.any(counts < 1):
            raise InputError("counts must be at least 1")
        scales.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class DimensionEstimate:
    """Fitted box-counting dimension: slope, intercept constant, fit quality."""

    rho_hat: float
    c_dim_hat: float
    r_squared: float
    scales_used: np.ndarray

    def __post_init__(self):
        used = np.array(self.scales_used, dtype=float, copy=True)
        used.setflags(write=False)
        object.__setattr__(self, "scales_used", used)


def covering_count(points, epsilon: float) -> int:
    """Number of occupied grid cells of side ``2*epsilon`` anchored at the origin."""
    points = as_points(points, "points")
    if not (np.isfinite(epsilon) and epsilon > 0):
        raise InputError(f"epsilon must be positive, got {epsilon!r}")
    cells = np.floor(points / (2.0 * epsilon)).astype(np.int64)
    return int(np.unique(cells, axis=0).shape[0])


def covering_profile(points, k_min: int = 2, k_max: int = 7, base: float = 2.0) -> CoveringProfile:
    """Counts over the geometric scale sweep ``eps_k = base^-k``, k from k_min to k_max.

    Dyadic scales (base 2) are the default; self-similar sets built on
    another subdivision ratio are best probed at matching scales
    (e.g. ``base=3`` for middle-thirds constructions).
    """
    points = as_points(points, "points")
    if k_min >= k_max:
        raise InputError(f"need k_min < k_max, got {k_min} >= {k_max}")
    if base <= 1.0:
        raise InputError(f"scale base must exceed 1, got {base}")
    ks = np.arange(int(k_min), int(k_max) + 1)
    scales = float(base) ** (-ks.astype(float))
    counts = np.array([covering_count(points, eps) for eps in scales], dtype=np.int64)
    return CoveringProfile(scales=scales, counts=counts, n_points=points.shape[0])


def boxdim_estimate(profile: CoveringProfile, saturation_fraction: float = 0.9) -> DimensionEstimate:
    """Least-squares slope of ``log N`` vs ``log(1/eps)`` over the usable window.

    Scales whose count reaches ``saturation_fraction`` of the number of
    points are dropped (the count can no longer grow), as are leading
    scales where the count has not yet started to change.  A profile whose
    retained counts are all equal is an exact zero-slope power law and is
    returned as such.

    Raises
    ------
    NumericalError
        If fewer than two scales survive the filtering.
    """
    scales = profile.scales
    counts = profile.counts.astype(float)

    keep = np.ones(scales.size, dtype=bool)
    if profile.n_points is not None:
        keep &= counts < saturation_fraction * profile.n_points
    scales = scales[keep]
    counts = counts[keep]
    if scales.size == 0:
        raise NumericalError(
            "no usable scales: every count is saturated at the sample size; "
            "use coarser scales (smaller k)"
        )

    if np.all(counts == counts[0]):
        # exact flat profile: zero-dimensional at these scales
        return DimensionEstimate(rho_hat=0.0, c_dim_hat=float(counts[0]),
                                 r_squared=1.0, scales_used=scales)

    first = 0
    while first + 1 < counts.size and counts[first] == counts[first + 1]:
        first += 1
    scales = scales[first:]
    counts = counts[first:]
    if scales.size < 2:
        raise NumericalError(
            "fewer than two usable scales after filtering "
            f"(kept {scales.size}); widen the scale window"
        )

    x = np.log(1.0 / scales)
    z = np.log(counts)
    slope, intercept = np.polyfit(x, z, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((z - fitted) ** 2))
    ss_tot = float(np.sum((z - np.mean(z)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return DimensionEstimate(
        rho_hat=float(slope),
        c_dim_hat=float(np.exp(intercept)),
        r_squared=float(r_squared),
        scales_used=scales,
    )
