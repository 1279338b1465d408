"""Tests for spectral simulation and the stationarity verification checks."""

import json

import numpy as np
import pytest

from circkrig import (
    TWO_PI,
    AliasingError,
    AllowabilityError,
    DiscreteMeasure,
    SpectralModel,
    check_coefficient_coupling,
    check_translation_stationarity,
    empirical_coefficients,
    simulate_brownian_bridge,
    simulate_irf,
)


class TestSimulateIrf:
    def test_determinism(self):
        spec = SpectralModel.from_list(1, [1.0, 0.5, 0.25])
        a = simulate_irf(spec, 4, 64, seed=7)
        b = simulate_irf(spec, 4, 64, seed=7)
        for ra, rb in zip(a, b):
            assert np.array_equal(ra.values, rb.values)

    def test_batch_size_invariance(self):
        # realization i depends on (seed, i) only, not on the batch size
        spec = SpectralModel.from_list(1, [1.0, 0.5])
        big = simulate_irf(spec, 5, 32, seed=3)
        small = simulate_irf(spec, 2, 32, seed=3)
        assert np.array_equal(big[0].values, small[0].values)
        assert np.array_equal(big[1].values, small[1].values)

    def test_seed_changes_output(self):
        spec = SpectralModel.from_list(1, [1.0])
        a = simulate_irf(spec, 1, 32, seed=0)
        b = simulate_irf(spec, 1, 32, seed=1)
        assert not np.array_equal(a[0].values, b[0].values)

    def test_empty_spectrum_gives_zeros(self):
        spec = SpectralModel.from_list(1, [])
        out = simulate_irf(spec, 2, 16, seed=0)
        for r in out:
            assert np.all(r.values == 0.0)

    def test_grid_and_metadata(self):
        spec = SpectralModel.from_list(1, [1.0])
        out = simulate_irf(spec, 3, 32, seed=5)
        assert len(out) == 3
        assert out[2].index == 2
        assert out[2].seed == 5
        assert out[0].grid_size == 32
        assert np.allclose(out[0].grid, np.arange(32) * TWO_PI / 32)

    def test_aliasing_guard(self):
        spec = SpectralModel.from_list(1, np.ones(40))
        with pytest.raises(AliasingError):
            simulate_irf(spec, 1, 64, seed=0)
        # 31 frequencies on 64 points is fine
        simulate_irf(SpectralModel.from_list(1, np.ones(31)), 1, 64, seed=0)

    def test_low_order_fixed_coefficients(self):
        spec = SpectralModel.from_list(2, [0.5])
        out = simulate_irf(spec, 2, 64, seed=1,
                           low_order=np.array([3.0, 0.0, 0.0]))
        base = simulate_irf(spec, 2, 64, seed=1)
        for r, b in zip(out, base):
            assert np.allclose(r.values - b.values, 3.0, atol=1e-12)

    def test_low_order_random_variance(self):
        # scalar low_order draws fresh low-frequency coefficients per
        # realization without disturbing the high-frequency stream
        spec = SpectralModel.from_list(1, [1.0])
        out = simulate_irf(spec, 3, 32, seed=2, low_order=0.5)
        base = simulate_irf(spec, 3, 32, seed=2)
        for r, b in zip(out, base):
            diff = r.values - b.values
            assert np.allclose(diff, diff[0], atol=1e-12)
            assert diff[0] != 0.0


def _coefficients_of(values, grid_size, n_max):
    """Wrap a raw array as a Realization and recover its coefficients."""
    from circkrig.simulate import Realization

    grid = np.arange(grid_size) * TWO_PI / grid_size
    real = Realization(grid=grid, values=np.asarray(values, dtype=float),
                       seed=0, index=0, provenance="test")
    return empirical_coefficients(real, n_max=n_max)


class TestEmpiricalCoefficients:
    def test_pure_harmonic(self):
        grid = np.arange(64) * TWO_PI / 64
        sample = _coefficients_of(np.cos(3 * grid), 64, n_max=10)
        assert np.isclose(sample.cos_coeffs[2], 1.0, atol=1e-12)
        mask = np.ones(10, bool)
        mask[2] = False
        assert np.max(np.abs(sample.cos_coeffs[mask])) < 1e-12
        assert np.max(np.abs(sample.sin_coeffs)) < 1e-12
        assert abs(sample.z0) < 1e-12

    def test_constant(self):
        sample = _coefficients_of(np.full(32, 2.5), 32, n_max=4)
        assert np.isclose(sample.z0, 2.5, atol=1e-14)
        assert np.max(np.abs(sample.cos_coeffs)) < 1e-13

    def test_round_trip(self):
        spec = SpectralModel.from_list(1, [1.0, 0.4, 0.2, 0.1])
        real = simulate_irf(spec, 1, 128, seed=9)[0]
        sample = empirical_coefficients(real, n_max=4)
        grid = real.grid
        n = np.arange(1, 5)
        rebuilt = (sample.z0
                   + sample.cos_coeffs @ np.cos(np.outer(n, grid))
                   + sample.sin_coeffs @ np.sin(np.outer(n, grid)))
        assert np.allclose(rebuilt, real.values, atol=1e-10)

    def test_n_max_guard(self):
        spec = SpectralModel.from_list(1, [1.0])
        real = simulate_irf(spec, 1, 16, seed=0)[0]
        with pytest.raises(AliasingError):
            empirical_coefficients(real, n_max=8)


class TestBrownianBridge:
    def test_pinned_at_origin(self):
        out = simulate_brownian_bridge(64, 5, seed=11)
        for r in out:
            assert r.values[0] == 0.0

    def test_determinism(self):
        a = simulate_brownian_bridge(32, 3, seed=4)
        b = simulate_brownian_bridge(32, 3, seed=4)
        for ra, rb in zip(a, b):
            assert np.array_equal(ra.values, rb.values)

    def test_midpoint_variance(self):
        # var B(pi) = 2 pi min - min^2 = pi^2
        out = simulate_brownian_bridge(8, 20000, seed=6)
        mid = np.array([r.values[4] for r in out])
        want = np.pi**2
        se = np.std(mid**2, ddof=1) / np.sqrt(mid.size)
        assert abs(np.mean(mid**2) - want) < 4.0 * se

    def test_covariance_spot(self):
        # cov(B(s), B(t)) = 2 pi min(s,t) - s t at s = pi/2, t = pi
        out = simulate_brownian_bridge(8, 20000, seed=13)
        s_idx, t_idx = 2, 4
        prods = np.array([r.values[s_idx] * r.values[t_idx] for r in out])
        s, t = s_idx * TWO_PI / 8, t_idx * TWO_PI / 8
        want = TWO_PI * min(s, t) - s * t
        se = np.std(prods, ddof=1) / np.sqrt(prods.size)
        assert abs(np.mean(prods) - want) < 4.0 * se


class TestStationarityCheck:
    @staticmethod
    def _increment_measure():
        return DiscreteMeasure([0.0, np.pi], [1.0, -1.0])

    def test_small_sample_reports_failure_without_raising(self):
        spec = SpectralModel.from_list(1, [1.0])
        reals = simulate_irf(spec, 10, 64, seed=0)
        report = check_translation_stationarity(
            reals, self._increment_measure(), kappa=1)
        assert not report.passed
        names = [r.name for r in report.results]
        assert names == ["stationarity-sample-size"]
        assert "insufficient samples" in report.results[0].detail

    def test_non_allowable_measure_rejected(self):
        spec = SpectralModel.from_list(1, [1.0])
        reals = simulate_irf(spec, 10, 64, seed=0)
        with pytest.raises(AllowabilityError):
            check_translation_stationarity(
                reals, DiscreteMeasure([0.0], [1.0]), kappa=1)

    def test_off_grid_atom_rejected(self):
        spec = SpectralModel.from_list(1, [1.0])
        reals = simulate_irf(spec, 10, 64, seed=0)
        with pytest.raises(ValueError):
            check_translation_stationarity(
                reals, DiscreteMeasure([0.05, 0.05 + np.pi], [1.0, -1.0]),
                kappa=1)

    def test_increment_process_passes(self):
        spec = SpectralModel.from_list(1, [1.0, 0.5, 0.25, 0.125])
        reals = simulate_irf(spec, 2000, 128, seed=1)
        report = check_translation_stationarity(
            reals, self._increment_measure(), kappa=1)
        assert report.passed, [r.line() for r in report.results]

    def test_truncated_process_is_stationary_as_is(self):
        # order >= 1 truncation leaves a process that is stationary raw,
        # so the identity measure passes with kappa=0 (no allowability)
        spec = SpectralModel.power_law(1, 1.0, 2.0, n_max=63)
        reals = simulate_irf(spec, 2000, 128, seed=2)
        identity = DiscreteMeasure([0.0], [1.0])
        report = check_translation_stationarity(reals, identity, kappa=0)
        assert report.passed, [r.line() for r in report.results]

    def test_nonzero_mean_detected(self):
        # a fixed drift constant shifts the mean away from zero
        spec = SpectralModel.from_list(1, [1.0, 0.5])
        reals = simulate_irf(spec, 2000, 128, seed=3,
                             low_order=np.array([2.0]))
        identity = DiscreteMeasure([0.0], [1.0])
        report = check_translation_stationarity(reals, identity, kappa=0)
        by_name = {r.name: r for r in report.results}
        assert not by_name["stationary-zero-mean"].passed

    def test_nonstationary_covariance_detected(self):
        # the raw bridge is pinned at angle 0, so its covariance depends
        # on location, not just lag
        reals = simulate_brownian_bridge(128, 2000, seed=5)
        identity = DiscreteMeasure([0.0], [1.0])
        report = check_translation_stationarity(reals, identity, kappa=0)
        by_name = {r.name: r for r in report.results}
        assert not by_name["stationary-lag-covariance"].passed

    def test_report_serialization(self, tmp_path):
        spec = SpectralModel.from_list(1, [1.0])
        reals = simulate_irf(spec, 10, 64, seed=0)
        report = check_translation_stationarity(
            reals, self._increment_measure(), kappa=1)
        path = tmp_path / "report.json"
        report.to_json(path)
        payload = json.loads(path.read_text())
        assert payload["pass"] is False
        assert payload["checks"][0]["check_name"] == "stationarity-sample-size"
        assert set(payload["checks"][0]) >= {
            "check_name", "statistic", "threshold", "pass"}


class TestCoefficientCoupling:
    def test_moment_shapes(self):
        out = simulate_brownian_bridge(64, 200, seed=8)
        moments = check_coefficient_coupling(out, n_max=4)
        assert moments.n_samples == 200
        assert moments.cos_cos.shape == (4, 4)
        assert moments.z0_cos.shape == (4,)

    def test_bridge_moments_rough(self):
        # small run: verify signs and orders of magnitude only
        out = simulate_brownian_bridge(64, 4000, seed=9)
        moments = check_coefficient_coupling(out, n_max=3)
        n = np.arange(1, 4)
        want = 2.0 / n**2
        assert np.allclose(np.diag(moments.cos_cos), want,
                           atol=4.0 * np.max(moments.cos_cos_se))
        assert np.allclose(moments.z0_cos, -want,
                           atol=4.0 * np.max(moments.z0_cos_se))
