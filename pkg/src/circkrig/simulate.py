"""Spectral simulation on an equispaced circular grid, plus moment checks.

A realization of the truncated intrinsic process is

    Z(t) = sum_{n in support} (Z_nc cos nt + Z_ns sin nt),

with independent Gaussian coefficients of variance ``gamma_n``.  Optionally
a random or fixed polynomial from the drift space is added; allowable
measures of the model order annihilate it, so those functionals are
unaffected.  The Brownian bridge sampler provides the classical example of
a process that is stationary only through its order-1 increments.

Determinism: realization ``i`` under master seed ``s`` always uses the
generator ``numpy.random.default_rng([s, i])``, independent of batch size
or order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .circle import TWO_PI, DiscreteMeasure, NilSpaceBasis, angular_distance
from .covariance import SpectralModel
from .errors import AliasingError, AllowabilityError
from .report import CheckResult, Report

__all__ = [
    "Realization",
    "CoefficientSample",
    "CouplingMoments",
    "simulate_irf",
    "simulate_brownian_bridge",
    "empirical_coefficients",
    "check_translation_stationarity",
    "check_coefficient_coupling",
]

logger = logging.getLogger(__name__)

# Below this many realizations the stationarity test has no power and is
# reported as failed rather than run.
MIN_STATIONARITY_SAMPLES = 1000
# Tolerance (in grid steps) for matching requested angles to grid nodes.
_GRID_SNAP_TOL = 1.0e-9


def _grid(grid_size: int) -> np.ndarray:
    if grid_size < 2:
        raise ValueError("grid needs at least 2 points")
    return TWO_PI * np.arange(grid_size) / grid_size


@dataclass(frozen=True)
class Realization:
    """One simulated path sampled on an equispaced grid."""

    grid: np.ndarray
    values: np.ndarray
    seed: int
    index: int
    provenance: str

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("grid and values must be 1-d arrays of "
                             "equal length")
        g = g.copy()
        v = v.copy()
        g.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @property
    def grid_size(self) -> int:
        return self.grid.size


def simulate_irf(model: SpectralModel, n_realizations: int, grid_size: int,
                 seed: int, low_order=None) -> list[Realization]:
    """Simulate the truncated process on an equispaced grid.

    Parameters
    ----------
    model : SpectralModel
        Spectral weights; every supported frequency must satisfy
        ``n <= (grid_size - 1) // 2`` or an ``AliasingError`` is raised.
    n_realizations : int
    grid_size : int
    seed : int
        Master seed; realization ``i`` uses ``default_rng([seed, i])``.
    low_order : None, array_like, or float
        Drift-space content.  ``None`` adds nothing; an array of length
        ``2*kappa - 1`` adds that fixed polynomial to every realization; a
        positive float draws iid N(0, low_order**2) drift coefficients per
        realization.
    """
    if n_realizations < 0:
        raise ValueError("n_realizations must be >= 0")
    grid = _grid(grid_size)
    freqs = model.frequencies()
    limit = (grid_size - 1) // 2
    if freqs.size and freqs[-1] > limit:
        raise AliasingError(
            f"model carries frequency {int(freqs[-1])} but a grid of size "
            f"{grid_size} resolves only frequencies up to {limit}"
        )
    sd = np.sqrt(model.gammas())
    cos_t = np.cos(np.multiply.outer(freqs.astype(float), grid))
    sin_t = np.sin(np.multiply.outer(freqs.astype(float), grid))

    nil = NilSpaceBasis(model.kappa)
    fixed_drift = None
    drift_scale = None
    if low_order is not None:
        if np.ndim(low_order) == 0:
            drift_scale = float(low_order)
            if drift_scale < 0.0:
                raise ValueError("drift scale must be >= 0")
        else:
            coeffs = np.asarray(low_order, dtype=float)
            if coeffs.shape != (nil.dim,):
                raise ValueError(
                    f"fixed drift needs {nil.dim} coefficients for order "
                    f"{model.kappa}, got {coeffs.size}"
                )
            fixed_drift = nil.design_matrix(grid) @ coeffs
    drift_design = nil.design_matrix(grid) if drift_scale is not None else None

    tag = (f"irf(kappa={model.kappa}, support=[{model.kappa},"
           f"{model.support_end}], grid={grid_size})")
    out = []
    for i in range(int(n_realizations)):
        rng = np.random.default_rng([seed, i])
        coeff = rng.standard_normal((2, freqs.size)) * sd
        vals = coeff[0] @ cos_t + coeff[1] @ sin_t
        if fixed_drift is not None:
            vals = vals + fixed_drift
        elif drift_scale is not None:
            vals = vals + drift_design @ (rng.standard_normal(nil.dim)
                                          * drift_scale)
        out.append(Realization(grid, vals, int(seed), i, tag))
    return out


def simulate_brownian_bridge(grid_size: int, n_realizations: int,
                             seed: int) -> list[Realization]:
    """Sample the circular Brownian bridge on an equispaced grid.

    The covariance is ``2*pi*min(s, t) - s*t`` with the path pinned to zero
    at angle 0.  Sampling is by Cholesky factorization of the interior
    covariance; if that fails numerically a jitter of 1e-12 is added once,
    with a logged warning.
    """
    if n_realizations < 0:
        raise ValueError("n_realizations must be >= 0")
    grid = _grid(grid_size)
    interior = grid[1:]
    cov = (TWO_PI * np.minimum.outer(interior, interior)
           - np.outer(interior, interior))
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        logger.warning(
            "bridge covariance failed Cholesky at grid size %d; "
            "retrying with 1e-12 jitter", grid_size)
        cov[np.diag_indices_from(cov)] += 1.0e-12
        chol = np.linalg.cholesky(cov)

    tag = f"brownian-bridge(grid={grid_size})"
    out = []
    for i in range(int(n_realizations)):
        rng = np.random.default_rng([seed, i])
        path = np.empty(grid_size)
        path[0] = 0.0
        path[1:] = chol @ rng.standard_normal(grid_size - 1)
        out.append(Realization(grid, path, int(seed), i, tag))
    return out


@dataclass(frozen=True)
class CoefficientSample:
    """Empirical trigonometric coefficients of one realization.

    ``z0`` is the circular mean ``(1/2pi) integral Z``; ``cos_coeffs[i]``
    and ``sin_coeffs[i]`` estimate the coefficients at frequency ``i + 1``.
    """

    z0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray


def _coefficient_arrays(values: np.ndarray, grid: np.ndarray,
                        n_max: int) -> tuple[np.ndarray, np.ndarray,
                                             np.ndarray]:
    """Vectorized coefficient recovery for rows of ``values``.

    The rectangle rule on the periodic grid integrates products of
    harmonics exactly as long as all frequencies stay at or below
    ``(G - 1) // 2``.
    """
    g = grid.size
    if n_max > (g - 1) // 2:
        raise AliasingError(
            f"cannot recover frequency {n_max} from a grid of size {g}; "
            f"the limit is {(g - 1) // 2}"
        )
    z0 = values.mean(axis=-1)
    if n_max == 0:
        empty = np.zeros(values.shape[:-1] + (0,))
        return z0, empty, empty
    n = np.arange(1, n_max + 1, dtype=float)
    ang = np.multiply.outer(n, grid)
    cos_c = (2.0 / g) * (values @ np.cos(ang).T)
    sin_c = (2.0 / g) * (values @ np.sin(ang).T)
    return z0, cos_c, sin_c


def empirical_coefficients(realization: Realization,
                           n_max: int) -> CoefficientSample:
    """Recover mean and harmonic coefficients up to ``n_max`` from a path."""
    z0, cos_c, sin_c = _coefficient_arrays(realization.values[None, :],
                                           realization.grid, n_max)
    return CoefficientSample(float(z0[0]), cos_c[0], sin_c[0])


def _stacked(realizations) -> tuple[np.ndarray, np.ndarray]:
    if not realizations:
        raise ValueError("no realizations given")
    grid = realizations[0].grid
    for r in realizations[1:]:
        if r.grid.shape != grid.shape or not np.array_equal(r.grid, grid):
            raise ValueError("realizations must share one grid")
    return grid, np.stack([r.values for r in realizations])


def _snap_to_grid(angles: np.ndarray, grid_size: int, what: str) -> np.ndarray:
    """Map angles to grid indices; they must lie on the grid."""
    angles = np.asarray(angles, dtype=float)
    h = TWO_PI / grid_size
    idx = np.rint(angles / h)
    err = np.abs(angles - idx * h)
    if np.any(err > _GRID_SNAP_TOL):
        off = angles[np.argmax(err)]
        raise ValueError(
            f"{what} angle {float(off):.6g} does not lie on the "
            f"size-{grid_size} grid"
        )
    return idx.astype(int) % grid_size


def check_translation_stationarity(realizations, measure: DiscreteMeasure,
                                   kappa: int, lags=None,
                                   tol_factor: float = 4.0,
                                   min_realizations: int =
                                   MIN_STATIONARITY_SAMPLES) -> Report:
    """Test that the aggregated process is translation stationary.

    For an allowable measure ``lambda`` of order ``kappa`` the functional
    ``Y(t) = sum_i w_i Z(t_i + t)`` must have constant (zero) mean and a
    covariance depending only on the lag between shifts.  ``Y`` is
    evaluated at shift angles ``lags`` (grid-aligned; defaults to eight
    equispaced shifts), its mean is compared to zero, and covariances of
    shift pairs with equal angular separation are compared to each other.
    All comparisons are in units of their standard errors against
    ``tol_factor``.

    With ``kappa = 0`` the raw process itself is tested (no allowability
    requirement); this is the negative control for processes that are only
    intrinsically stationary.
    """
    grid, values = _stacked(realizations)
    n_real = values.shape[0]
    if kappa >= 1 and not measure.is_allowable(kappa, tol=1.0e-8):
        raise AllowabilityError(
            f"measure is not allowable at order {kappa}; the stationarity "
            "claim only covers allowable measures"
        )
    g = grid.size
    atom_idx = _snap_to_grid(measure.locations, g, "measure atom")
    if lags is None:
        lag_idx = np.arange(8) * (g // 8) if g >= 8 else np.arange(g)
    else:
        lag_idx = _snap_to_grid(np.asarray(lags, dtype=float), g, "lag")
    lag_angles = grid[lag_idx]
    # Input errors raise above; an underpowered run is merely a failed check.
    if n_real < min_realizations:
        return Report([CheckResult(
            "stationarity-sample-size", float(n_real),
            float(min_realizations), False,
            "insufficient samples (pass needs statistic >= threshold)")])

    # Y[:, j] aggregates each realization under the measure shifted by lag j.
    agg = np.empty((n_real, lag_idx.size))
    for j, shift in enumerate(lag_idx):
        agg[:, j] = values[:, (atom_idx + shift) % g] @ measure.weights

    means = agg.mean(axis=0)
    sds = agg.std(axis=0, ddof=1)
    se = sds / np.sqrt(n_real)
    with np.errstate(divide="ignore", invalid="ignore"):
        z_mean = np.where(se > 0.0, np.abs(means) / se,
                          np.where(np.abs(means) > 0.0, np.inf, 0.0))
    stat_mean = float(np.max(z_mean))

    cov = np.cov(agg.T, ddof=1).reshape(lag_idx.size, lag_idx.size)
    cov_se = np.sqrt((np.outer(np.diag(cov), np.diag(cov)) + cov**2)
                     / n_real)

    # Group unordered shift pairs by their angular separation and compare
    # covariances within each group.
    groups: dict = {}
    for j in range(lag_idx.size):
        for k in range(j, lag_idx.size):
            key = round(float(angular_distance(lag_angles[j],
                                               lag_angles[k])), 9)
            groups.setdefault(key, []).append((j, k))
    stat_cov = 0.0
    n_compared = 0
    for pairs in groups.values():
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                ja, ka = pairs[a]
                jb, kb = pairs[b]
                pooled = np.hypot(cov_se[ja, ka], cov_se[jb, kb])
                if pooled == 0.0:
                    continue
                z = abs(cov[ja, ka] - cov[jb, kb]) / pooled
                stat_cov = max(stat_cov, float(z))
                n_compared += 1

    report = Report([
        CheckResult("stationary-zero-mean", stat_mean, float(tol_factor),
                    stat_mean <= tol_factor,
                    f"max |mean|/se over {lag_idx.size} shifts"),
        CheckResult("stationary-lag-covariance", stat_cov, float(tol_factor),
                    stat_cov <= tol_factor,
                    f"max z over {n_compared} equal-separation pairs"),
    ])
    report.context.update(means=means, covariances=cov,
                          lag_angles=lag_angles)
    return report


@dataclass(frozen=True)
class CouplingMoments:
    """Monte-Carlo second moments of empirical coefficients.

    Entry ``(i, j)`` of the matrices refers to frequencies ``i + 1`` and
    ``j + 1``; the ``*_se`` arrays hold the matching standard errors.
    """

    n_samples: int
    z0_sq: float
    z0_sq_se: float
    z0_cos: np.ndarray
    z0_cos_se: np.ndarray
    z0_sin: np.ndarray
    z0_sin_se: np.ndarray
    cos_cos: np.ndarray
    cos_cos_se: np.ndarray
    sin_sin: np.ndarray
    sin_sin_se: np.ndarray
    cos_sin: np.ndarray
    cos_sin_se: np.ndarray


def _mean_and_se(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = samples.shape[0]
    return (samples.mean(axis=0),
            samples.std(axis=0, ddof=1) / np.sqrt(n))


def check_coefficient_coupling(realizations, n_max: int) -> CouplingMoments:
    """Sample cross-moments of the empirical coefficients up to ``n_max``.

    Usable standard errors need on the order of 1e4 realizations; the
    caller is expected to compare the moments against its model targets.
    """
    grid, values = _stacked(realizations)
    z0, cos_c, sin_c = _coefficient_arrays(values, grid, n_max)

    z0_sq, z0_sq_se = _mean_and_se(z0[:, None] ** 2)
    z0_cos, z0_cos_se = _mean_and_se(z0[:, None] * cos_c)
    z0_sin, z0_sin_se = _mean_and_se(z0[:, None] * sin_c)
    cos_cos, cos_cos_se = _mean_and_se(cos_c[:, :, None] * cos_c[:, None, :])
    sin_sin, sin_sin_se = _mean_and_se(sin_c[:, :, None] * sin_c[:, None, :])
    cos_sin, cos_sin_se = _mean_and_se(cos_c[:, :, None] * sin_c[:, None, :])
    return CouplingMoments(
        n_samples=values.shape[0],
        z0_sq=float(z0_sq[0]), z0_sq_se=float(z0_sq_se[0]),
        z0_cos=z0_cos, z0_cos_se=z0_cos_se,
        z0_sin=z0_sin, z0_sin_se=z0_sin_se,
        cos_cos=cos_cos, cos_cos_se=cos_cos_se,
        sin_sin=sin_sin, sin_sin_se=sin_sin_se,
        cos_sin=cos_sin, cos_sin_se=cos_sin_se,
    )
