"""Randomized verification suites shared by the CLI and the test suite.

Each suite draws its own deterministic generator stream from a master seed,
runs a batch of randomized instances, and reports worst-case statistics as
:class:`~circkrig.report.CheckResult` records.  Monte-Carlo suites compare
sample moments against analytic targets in standard-error units and are
sized so a false failure is rare (< 1% per run at the default sizes).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import simpson

from .circle import (
    TWO_PI,
    CardinalBasis,
    DiscreteMeasure,
    NilSpaceBasis,
    angular_distance,
)
from .covariance import (
    IntrinsicCovariance,
    Semivariogram,
    SpectralModel,
    phi_from_variogram,
    spline_kernel,
)
from .kriging import Dataset, fit_ordinary, fit_universal, trig_regression
from .report import CheckResult, Report
from .rkhs import RkhsKernel, TruncatedFunction, full_inner_product
from .simulate import (
    check_coefficient_coupling,
    check_translation_stationarity,
    simulate_brownian_bridge,
    simulate_irf,
)

__all__ = [
    "random_allowable_measure",
    "measure_checks",
    "spline_checks",
    "kernel_checks",
    "primal_dual_checks",
    "smoothing_limit_checks",
    "ordinary_universal_checks",
    "bridge_moment_checks",
    "stationarity_checks",
    "run_verification",
    "SUITE_NAMES",
]


def random_allowable_measure(rng, kappa: int,
                             natoms: int) -> DiscreteMeasure:
    """Random measure annihilating every harmonic of frequency < kappa.

    Weights are the projection of a Gaussian vector onto the null space of
    the moment-constraint matrix at random atom angles, normalized to unit
    max weight.  Needs ``natoms >= 2*kappa`` so the null space is
    nontrivial.
    """
    if kappa < 1:
        raise ValueError("order must be >= 1")
    if natoms < 2 * kappa:
        raise ValueError(f"need at least {2 * kappa} atoms at order {kappa}")
    while True:
        loc = rng.uniform(0.0, TWO_PI, natoms)
        rows = [np.ones(natoms)]
        for k in range(1, kappa):
            rows.append(np.cos(k * loc))
            rows.append(np.sin(k * loc))
        constraints = np.vstack(rows)
        w = rng.standard_normal(natoms)
        _, sv, vt = np.linalg.svd(constraints, full_matrices=False)
        rank = int(np.sum(sv > sv[0] * 1.0e-12))
        w = w - vt[:rank].T @ (vt[:rank] @ w)
        peak = np.max(np.abs(w))
        if peak > 1.0e-6:
            return DiscreteMeasure(loc, w / peak)


def _random_points(rng, n: int, min_gap: float = 5.0e-3) -> np.ndarray:
    """Random distinct angles with a guaranteed circular separation."""
    while True:
        pts = np.sort(rng.uniform(0.0, TWO_PI, n))
        gaps = np.diff(pts, append=pts[0] + TWO_PI)
        if n == 1 or np.min(gaps) >= min_gap:
            return pts


def _jittered_points(rng, n: int, jitter: float = 0.3) -> np.ndarray:
    """Random angles keeping a healthy fraction of the average spacing.

    An equispaced grid with per-point jitter and a random rotation; every
    circular gap stays within ``1 +- 2*jitter`` grid steps.  Zero-nugget
    collocation systems on fully random points can reach condition numbers
    past 1e12 once two angles nearly coincide, which would drown the
    agreement checks in rounding noise rather than exercise the algebra.
    """
    h = TWO_PI / n
    pts = (np.arange(n) + rng.uniform(-jitter, jitter, n)) * h
    return np.sort((pts + rng.uniform(0.0, TWO_PI)) % TWO_PI)


def measure_checks(seed: int = 0, n_measures: int = 1000,
                   tol: float = 1.0e-8) -> Report:
    """Allowability invariants over random measures.

    Covers annihilation of the drift space, nesting of the allowable
    classes across orders, invariance of allowability under rotation, and
    rejection of measures that are not allowable.
    """
    rng = np.random.default_rng([seed, 101])
    fails = {"annihilation": 0, "nesting": 0, "translation": 0,
             "rejection": 0}
    worst_resid = 0.0
    for _ in range(int(n_measures)):
        kappa = int(rng.integers(1, 4))
        natoms = int(rng.integers(2 * kappa + 1, 2 * kappa + 8))
        lam = random_allowable_measure(rng, kappa, natoms)

        nil = NilSpaceBasis(kappa)
        design = nil.design_matrix(lam.locations)
        resid = float(np.max(np.abs(design.T @ lam.weights)))
        worst_resid = max(worst_resid, resid)
        if resid > tol or not lam.is_allowable(kappa, tol=tol):
            fails["annihilation"] += 1

        deeper = random_allowable_measure(rng, kappa + 1,
                                          int(rng.integers(2 * kappa + 2,
                                                           2 * kappa + 9)))
        if not (deeper.is_allowable(kappa + 1, tol=tol)
                and deeper.is_allowable(kappa, tol=tol)):
            fails["nesting"] += 1

        shift = float(rng.uniform(0.0, TWO_PI))
        if not lam.translate(shift).is_allowable(kappa, tol=tol):
            fails["translation"] += 1

        rough = DiscreteMeasure(rng.uniform(0.0, TWO_PI, natoms),
                                np.abs(rng.standard_normal(natoms)) + 0.5)
        if rough.is_allowable(kappa, tol=tol) or \
                rough.translate(shift).is_allowable(kappa, tol=tol):
            fails["rejection"] += 1

    def counted(name, n_bad, extra=""):
        return CheckResult(name, float(n_bad), 0.0, n_bad == 0,
                           extra or f"failures out of {n_measures}")

    return Report([
        counted("measure-annihilation", fails["annihilation"],
                f"worst residual {worst_resid:.3e} over "
                f"{n_measures} measures"),
        counted("measure-nesting", fails["nesting"]),
        counted("measure-translation-invariance", fails["translation"]),
        counted("measure-rejects-nonallowable", fails["rejection"]),
    ])


def spline_checks(seed: int = 0, n_lags: int = 200,
                  n_terms: int = 100_000) -> Report:
    """Closed spline kernels against their partial cosine series.

    The analytic truncation bound ``2 * N**(1-2m) / (2m - 1)`` limits the
    discrepancy, and the classical spot values pin the normalization.
    """
    rng = np.random.default_rng([seed, 110])
    lags = rng.uniform(0.0, TWO_PI, n_lags)
    results = []
    ld = np.longdouble
    lags_ld = lags.astype(ld)
    for m in (1, 2):
        # Reference partial sum: the leading mass in extended precision
        # (where nearly all of it sits), the thin tail in float64, so the
        # reference is the true partial sum to well below 1e-15.
        head = min(1000, n_terms)
        n_head = np.arange(1, head + 1, dtype=ld)
        partial = (ld(2.0) * n_head ** (-2 * m)) @ np.cos(
            np.multiply.outer(n_head, lags_ld))
        block = 10_000
        for start in range(head + 1, n_terms + 1, block):
            n = np.arange(start, min(start + block, n_terms + 1),
                          dtype=float)
            partial = partial + (2.0 * n ** (-2.0 * m)) @ \
                np.cos(np.multiply.outer(n, lags))
        closed = np.asarray(spline_kernel(m, lags, 0.0), dtype=ld)
        # Integral-comparison tail bound, floored at 1e-14 to leave room
        # for float64 rounding of the closed form itself.
        bound = max(2.0 * n_terms ** (1.0 - 2.0 * m) / (2.0 * m - 1.0),
                    1.0e-14)
        worst = float(np.max(np.abs(closed - partial)))
        results.append(CheckResult(
            f"spline-m{m}-series-agreement", worst, bound,
            worst <= bound, f"partial series with {n_terms} terms"))

    spots = [
        ("spline-m1-value-at-zero", spline_kernel(1, 0.0, 0.0),
         math.pi**2 / 3.0),
        ("spline-m1-value-at-pi", spline_kernel(1, math.pi, 0.0),
         -math.pi**2 / 6.0),
        ("spline-m2-value-at-zero", spline_kernel(2, 0.0, 0.0),
         math.pi**4 / 45.0),
    ]
    for name, got, want in spots:
        err = abs(float(got) - want)
        results.append(CheckResult(name, err, 1.0e-12, err <= 1.0e-12))
    return Report(results)


def _random_spectrum(rng, kappa: int, n_freq: int) -> SpectralModel:
    return SpectralModel.from_list(kappa, rng.uniform(0.1, 2.0, n_freq))


def _injected_covariance(rng, kappa: int, n_freq: int) -> IntrinsicCovariance:
    """A covariance whose series has one negative weight (for negative
    controls); validation is bypassed through the closed-form hook."""
    gams = rng.uniform(0.1, 2.0, n_freq)
    bad = gams.copy()
    bad[int(rng.integers(0, n_freq))] *= -1.0
    freqs = np.arange(kappa, kappa + n_freq, dtype=float)

    def series(d):
        d = np.asarray(d, dtype=float)
        return np.tensordot(bad, np.cos(np.multiply.outer(freqs, d)),
                            axes=(0, 0))

    return IntrinsicCovariance(SpectralModel.from_list(kappa, gams),
                               closed_form=series)


def kernel_checks(seed: int = 0, n_sets: int = 50, max_points: int = 40,
                  negative_gamma: bool = False) -> Report:
    """Positive semidefiniteness and the reproducing property.

    Random finite-spectrum models of orders 1..3 are evaluated on random
    point sets; Gram eigenvalues must not dip below ``-1e-10`` times the
    largest, and pairing a kernel section with a random in-space function
    must return its point value to 1e-9.

    ``negative_gamma`` flips one spectral weight negative (the model
    constructor forbids this, so the bad series enters through the
    closed-form hook); the semidefiniteness check is then expected to fail.
    """
    rng = np.random.default_rng([seed, 202])
    worst_eig = 0.0
    worst_reprod = 0.0
    for _ in range(int(n_sets)):
        kappa = int(rng.integers(1, 4))
        n_freq = int(rng.integers(2, 9))
        if negative_gamma:
            cov = _injected_covariance(rng, kappa, n_freq)
        else:
            cov = IntrinsicCovariance(_random_spectrum(rng, kappa, n_freq))
        kernel = RkhsKernel(cov)
        n_pts = int(rng.integers(2 * kappa + 1, max_points + 1))
        pts = _random_points(rng, n_pts)
        gram = kernel.gram(pts)
        eigs = np.linalg.eigvalsh(0.5 * (gram + gram.T))
        worst_eig = max(worst_eig, float(-eigs[0] / eigs[-1]))

        model = cov.model
        deg = model.support_end
        cos_c = np.zeros(deg)
        sin_c = np.zeros(deg)
        cos_c[:kappa - 1] = rng.standard_normal(kappa - 1)
        sin_c[:kappa - 1] = rng.standard_normal(kappa - 1)
        cos_c[kappa - 1:] = rng.standard_normal(deg - kappa + 1)
        sin_c[kappa - 1:] = rng.standard_normal(deg - kappa + 1)
        f = TruncatedFunction(float(rng.standard_normal()), cos_c, sin_c)
        x0 = float(rng.uniform(0.0, TWO_PI))
        ip = full_inner_product(kernel.section(x0), f, kernel)
        err = abs(ip - float(f(x0))) / max(1.0, abs(float(f(x0))))
        worst_reprod = max(worst_reprod, err)

    return Report([
        CheckResult("kernel-positive-semidefinite", worst_eig, 1.0e-10,
                    worst_eig <= 1.0e-10,
                    f"worst -min/max eigenvalue ratio over {n_sets} Grams"),
        CheckResult("kernel-reproducing", worst_reprod, 1.0e-9,
                    worst_reprod <= 1.0e-9,
                    "worst |<H(x,.), f> - f(x)| over random sections"),
    ])


def _rich_spectrum(rng, kappa: int, n: int, extra_low: int = 2,
                   extra_high: int = 6) -> SpectralModel:
    """Finite spectrum wide enough to keep the no-nugget system regular.

    Solvability of the bordered system at zero nugget needs the harmonic
    evaluations plus drift to span: 2*n_freq + (2*kappa - 1) >= n.  The
    extra frequencies and the 0.4 weight floor buy conditioning headroom
    on top of bare solvability.
    """
    needed = max(1, math.ceil((n - (2 * kappa - 1)) / 2))
    n_freq = needed + int(rng.integers(extra_low, extra_high))
    return SpectralModel.from_list(kappa, rng.uniform(0.4, 2.0, n_freq))


def _unbiasedness_residual(model, t0s, kappa: int) -> float:
    worst = 0.0
    for t0 in np.atleast_1d(t0s):
        lam = model.unbiasedness_measure(float(t0))
        for k in range(kappa):
            c, s = lam.moments(k)
            worst = max(worst, abs(c), abs(s))
    return worst


def primal_dual_checks(seed: int = 0, n_instances: int = 100,
                       n_query: int = 20) -> Report:
    """Dual and primal prediction paths agree instance by instance.

    Random instances over orders 1..3, data sizes up to 30, and nuggets
    {0, 0.1, 1}; also checks orthogonality of the dual data coefficients to
    the drift and unbiasedness of the primal weights.
    """
    rng = np.random.default_rng([seed, 303])
    sigmas = [0.0, 0.1, 1.0]
    worst_rel = 0.0
    worst_orth = 0.0
    worst_moment = 0.0
    for i in range(int(n_instances)):
        kappa = int(rng.integers(1, 4))
        dim = 2 * kappa - 1
        n = int(rng.integers(dim, 31))
        nugget = sigmas[i % 3]
        model = _rich_spectrum(rng, kappa, n)
        pts = _jittered_points(rng, n)
        y = rng.standard_normal(n)
        fit = fit_universal(Dataset(pts, y), model, nugget)
        t0s = rng.uniform(0.0, TWO_PI, n_query)

        dual = np.atleast_1d(fit.predict(t0s))
        eta, _ = fit.weights(t0s)
        primal = eta @ y
        scale = max(1.0, float(np.max(np.abs(y))))
        worst_rel = max(worst_rel,
                        float(np.max(np.abs(dual - primal))) / scale)
        worst_orth = max(worst_orth, float(np.max(np.abs(
            fit.basis.design_matrix(pts).T @ fit.kernel_coeffs))))
        worst_moment = max(worst_moment,
                           _unbiasedness_residual(fit, t0s, kappa))

    return Report([
        CheckResult("primal-dual-agreement", worst_rel, 1.0e-9,
                    worst_rel <= 1.0e-9,
                    f"worst relative gap over {n_instances} instances"),
        CheckResult("dual-drift-orthogonality", worst_orth, 1.0e-8,
                    worst_orth <= 1.0e-8),
        CheckResult("unbiasedness-universal", worst_moment, 1.0e-8,
                    worst_moment <= 1.0e-8,
                    "worst low-order moment of the error measures"),
    ])


def smoothing_limit_checks(seed: int = 0, n_instances: int = 20,
                           n_query: int = 20) -> Report:
    """Exact interpolation at zero nugget and the heavy-smoothing limit.

    At nugget 0 the fit interpolates the data; as the nugget grows through
    {1e2, 1e4, 1e6} the predictor approaches plain trigonometric
    regression monotonically, landing within 1e-3 of it (relative to the
    data scale) at 1e6.
    """
    rng = np.random.default_rng([seed, 404])
    worst_interp = 0.0
    worst_limit = 0.0
    monotone_breaks = 0
    worst_moment = 0.0
    for _ in range(int(n_instances)):
        kappa = int(rng.integers(1, 4))
        dim = 2 * kappa - 1
        n = int(rng.integers(max(dim, 4), 25))
        model = _rich_spectrum(rng, kappa, n)
        pts = _jittered_points(rng, n)
        y = rng.standard_normal(n)
        data = Dataset(pts, y)
        scale = max(1.0, float(np.max(np.abs(y))))

        exact = fit_universal(data, model, 0.0)
        worst_interp = max(worst_interp, float(np.max(np.abs(
            np.atleast_1d(exact.predict(pts)) - y))) / scale)

        coeffs = trig_regression(data, kappa)
        reg_at_pts = NilSpaceBasis(kappa).design_matrix(pts) @ coeffs
        gaps = []
        for nugget in (1.0e2, 1.0e4, 1.0e6):
            fit = fit_universal(data, model, nugget)
            gaps.append(float(np.max(np.abs(
                np.atleast_1d(fit.predict(pts)) - reg_at_pts))))
            if nugget == 1.0e6:
                t0s = rng.uniform(0.0, TWO_PI, n_query)
                worst_moment = max(worst_moment, _unbiasedness_residual(
                    fit, t0s, kappa))
        if not (gaps[0] >= gaps[1] * (1.0 - 1.0e-9)
                and gaps[1] >= gaps[2] * (1.0 - 1.0e-9)):
            monotone_breaks += 1
        worst_limit = max(worst_limit, gaps[2] / scale)

    return Report([
        CheckResult("exact-interpolation", worst_interp, 1.0e-8,
                    worst_interp <= 1.0e-8,
                    "zero-nugget fits, relative to data scale"),
        CheckResult("smoothing-limit", worst_limit, 1.0e-3,
                    worst_limit <= 1.0e-3,
                    "distance to trig regression at nugget 1e6"),
        CheckResult("smoothing-monotone", float(monotone_breaks), 0.0,
                    monotone_breaks == 0,
                    "instances where the gap failed to shrink"),
        CheckResult("unbiasedness-smoothing", worst_moment, 1.0e-8,
                    worst_moment <= 1.0e-8),
    ])


def ordinary_universal_checks(seed: int = 0, n_instances: int = 50,
                              n_query: int = 20) -> Report:
    """Ordinary kriging equals universal kriging on the matched covariance.

    Order-1 instances: the variogram path (covariance ``c0 - tau``) and
    the direct ordinary solve must agree in prediction and variance, and
    both must be invariant under ``c0 -> c0 + 9``.
    """
    rng = np.random.default_rng([seed, 505])
    worst_pred = 0.0
    worst_var = 0.0
    worst_shift = 0.0
    worst_moment = 0.0
    for _ in range(int(n_instances)):
        n = int(rng.integers(2, 15))
        model = _rich_spectrum(rng, 1, n)
        cov = IntrinsicCovariance(model)
        pts = _jittered_points(rng, n)
        y = rng.standard_normal(n)
        data = Dataset(pts, y)
        scale = max(1.0, float(np.max(np.abs(y))))
        t0s = rng.uniform(0.0, TWO_PI, n_query)

        base_sv = Semivariogram(cov, c0=cov.phi0)
        ok = fit_ordinary(data, base_sv)
        uk = fit_universal(data, phi_from_variogram(base_sv), 0.0)
        ok_v, ok_s2 = ok.predict_with_variance(t0s)
        uk_v, uk_s2 = uk.predict_with_variance(t0s)
        worst_pred = max(worst_pred,
                         float(np.max(np.abs(ok_v - uk_v))) / scale)
        var_scale = max(1.0, cov.phi0)
        worst_var = max(worst_var,
                        float(np.max(np.abs(ok_s2 - uk_s2))) / var_scale)

        shifted_sv = Semivariogram(cov, c0=cov.phi0 + 9.0)
        uk9 = fit_universal(data, phi_from_variogram(shifted_sv), 0.0)
        uk9_v, uk9_s2 = uk9.predict_with_variance(t0s)
        ok9_v, ok9_s2 = fit_ordinary(data, shifted_sv).predict_with_variance(
            t0s)
        worst_shift = max(
            worst_shift,
            float(np.max(np.abs(uk9_v - uk_v))) / scale,
            float(np.max(np.abs(uk9_s2 - uk_s2))) / var_scale,
            float(np.max(np.abs(ok9_v - ok_v))) / scale,
            float(np.max(np.abs(ok9_s2 - ok_s2))) / var_scale,
        )
        worst_moment = max(worst_moment,
                           _unbiasedness_residual(ok, t0s, 1))

    return Report([
        CheckResult("ordinary-universal-prediction", worst_pred, 1.0e-9,
                    worst_pred <= 1.0e-9,
                    f"worst relative gap over {n_instances} instances"),
        CheckResult("ordinary-universal-variance", worst_var, 1.0e-9,
                    worst_var <= 1.0e-9),
        CheckResult("variogram-shift-invariance", worst_shift, 1.0e-9,
                    worst_shift <= 1.0e-9,
                    "predictions and variances under c0 -> c0 + 9"),
        CheckResult("unbiasedness-ordinary", worst_moment, 1.0e-8,
                    worst_moment <= 1.0e-8),
    ])


def _bridge_mean_variance_oracle(panels: int = 400) -> float:
    """Quadrature value of the variance of the circular mean of the bridge."""
    grid = np.linspace(0.0, TWO_PI, panels + 1)
    kern = (TWO_PI * np.minimum.outer(grid, grid) - np.outer(grid, grid))
    inner = simpson(kern, x=grid, axis=1)
    return float(simpson(inner, x=grid) / (4.0 * np.pi**2))


def bridge_moment_checks(seed: int = 0, n_realizations: int = 20_000,
                         grid_size: int = 512, n_freq: int = 8,
                         tol_factor: float = 4.0,
                         min_realizations: int = 10_000) -> Report:
    """Cross-moments of the bridge's empirical coefficients.

    The circular Brownian bridge has coefficient moments
    ``E(B_nc B_mc) = E(B_ns B_ms) = (2/n^2) delta_nm``,
    ``E(B_nc B_ms) = 0``, ``E(B_0 B_nc) = -2/n^2``, ``E(B_0 B_ns) = 0``,
    and mean-variance ``E(B_0^2)`` given by quadrature of its covariance.
    Every sample moment must sit within ``tol_factor`` standard errors of
    its target.
    """
    if n_realizations < min_realizations:
        return Report([CheckResult(
            "bridge-sample-size", float(n_realizations),
            float(min_realizations), False,
            "insufficient samples (pass needs statistic >= threshold)")])
    reals = simulate_brownian_bridge(grid_size, n_realizations, seed)
    cm = check_coefficient_coupling(reals, n_freq)
    n = np.arange(1, n_freq + 1, dtype=float)
    target_diag = 2.0 / n**2

    def max_z(emp, se, target):
        z = np.abs(emp - target) / se
        return float(np.max(z))

    results = []
    for name, emp, se in (("bridge-cos-cos-moments", cm.cos_cos,
                           cm.cos_cos_se),
                          ("bridge-sin-sin-moments", cm.sin_sin,
                           cm.sin_sin_se)):
        stat = max_z(emp, se, np.diag(target_diag))
        results.append(CheckResult(name, stat, tol_factor,
                                   stat <= tol_factor,
                                   f"{n_freq}x{n_freq} moment matrix"))
    stat = max_z(cm.cos_sin, cm.cos_sin_se, 0.0)
    results.append(CheckResult("bridge-cos-sin-independence", stat,
                               tol_factor, stat <= tol_factor))
    stat = max_z(cm.z0_cos, cm.z0_cos_se, -target_diag)
    results.append(CheckResult("bridge-mean-cos-coupling", stat, tol_factor,
                               stat <= tol_factor,
                               "E(B0 B_nc) = -2/n^2"))
    stat = max_z(cm.z0_sin, cm.z0_sin_se, 0.0)
    results.append(CheckResult("bridge-mean-sin-independence", stat,
                               tol_factor, stat <= tol_factor))
    oracle = _bridge_mean_variance_oracle()
    stat = abs(cm.z0_sq - oracle) / cm.z0_sq_se
    results.append(CheckResult("bridge-mean-variance", stat, tol_factor,
                               stat <= tol_factor,
                               f"E(B0^2) vs quadrature value {oracle:.6f}"))
    return Report(results)


def stationarity_checks(seed: int = 0, n_realizations: int = 5000,
                        grid_size: int = 256,
                        tol_factor: float = 4.0) -> Report:
    """Stationarity of aggregated processes, with a negative control.

    The raw Brownian bridge is not stationary, but order-1 allowable
    aggregates of it are; the low-frequency-truncated order-1 process is
    stationary outright.  The negative control feeds the raw bridge itself
    to the covariance comparison and must be flagged.
    """
    report = Report()
    bridge = simulate_brownian_bridge(grid_size, n_realizations, seed)

    lam = DiscreteMeasure([0.0, np.pi], [1.0, -1.0])
    sub = check_translation_stationarity(bridge, lam, kappa=1,
                                         tol_factor=tol_factor)
    report.extend(sub, prefix="bridge-increment-")

    limit = (grid_size - 1) // 2
    model = SpectralModel.power_law(1, 2.0, 2.0, n_max=limit)
    truncated = simulate_irf(model, n_realizations, grid_size, seed + 1)
    ident = DiscreteMeasure([0.0], [1.0])
    sub = check_translation_stationarity(truncated, ident, kappa=0,
                                         tol_factor=tol_factor)
    report.extend(sub, prefix="truncated-process-")

    control = check_translation_stationarity(bridge, ident, kappa=0,
                                             tol_factor=tol_factor)
    by_name = {r.name: r for r in control.results}
    cov_check = by_name.get("stationary-lag-covariance")
    if cov_check is None:
        report.results.append(CheckResult(
            "bridge-nonstationarity-detected", 0.0, tol_factor, False,
            "control could not run"))
    else:
        report.results.append(CheckResult(
            "bridge-nonstationarity-detected", cov_check.statistic,
            tol_factor, cov_check.statistic > tol_factor,
            "negative control: pass needs statistic > threshold"))
    return report


SUITE_NAMES = ("measures", "splines", "kernel", "kriging", "smoothing",
               "ordinary", "bridge-moments", "stationarity")


def run_verification(config: dict | None = None) -> Report:
    """Run the named suites (all of them by default) and merge the results.

    Recognized keys: ``checks`` (list of suite names), ``seed``,
    ``n_realizations`` and ``grid_size`` (bridge moments),
    ``stationarity_realizations`` and ``stationarity_grid``,
    ``tol_factor``, per-suite instance counts (``n_measures``,
    ``kernel_sets``, ``kriging_instances``, ``smoothing_instances``,
    ``ordinary_instances``), and ``inject`` (fault-injection hooks for
    exercising the checks themselves, for example
    ``{"negative_gamma": true}``).
    """
    cfg = dict(config or {})
    checks = cfg.get("checks", list(SUITE_NAMES))
    unknown = [c for c in checks if c not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; pick from "
                         f"{sorted(SUITE_NAMES)}")
    seed = int(cfg.get("seed", 0))
    tol_factor = float(cfg.get("tol_factor", 4.0))
    inject = cfg.get("inject", {}) or {}

    report = Report()
    if "measures" in checks:
        report.extend(measure_checks(seed,
                                     int(cfg.get("n_measures", 1000))))
    if "splines" in checks:
        report.extend(spline_checks(seed))
    if "kernel" in checks:
        report.extend(kernel_checks(
            seed, int(cfg.get("kernel_sets", 50)),
            negative_gamma=bool(inject.get("negative_gamma", False))))
    if "kriging" in checks:
        report.extend(primal_dual_checks(
            seed, int(cfg.get("kriging_instances", 100))))
    if "smoothing" in checks:
        report.extend(smoothing_limit_checks(
            seed, int(cfg.get("smoothing_instances", 20))))
    if "ordinary" in checks:
        report.extend(ordinary_universal_checks(
            seed, int(cfg.get("ordinary_instances", 50))))
    if "bridge-moments" in checks:
        report.extend(bridge_moment_checks(
            seed, int(cfg.get("n_realizations", 20_000)),
            int(cfg.get("grid_size", 512)), tol_factor=tol_factor))
    if "stationarity" in checks:
        report.extend(stationarity_checks(
            seed, int(cfg.get("stationarity_realizations", 5000)),
            int(cfg.get("stationarity_grid", 256)),
            tol_factor=tol_factor))
    return report
