import math

import numpy as np
import pytest

from ifmsim import (
    DeviceParams,
    QuadratureConvergenceError,
    WavePacketSpec,
    compute_phi,
    efficiencies,
    energy_ratios,
)

from _oracles import dense_energy_ratios, dense_phi, phi_asymptote

BENCH = DeviceParams(r1=0.98, r2=0.98, rho=0.9999, a=500.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(coherence_ratio=0.0),
        dict(coherence_ratio=-2.0),
        dict(integration_halfwidth=3.9),
        dict(rel_tolerance=0.0),
        dict(rel_tolerance=2e-3),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        WavePacketSpec(**kwargs)


def test_phi_is_one_without_feedback():
    phi, err = compute_phi(DeviceParams(0.98, 0.98, 0.0))
    assert phi == 1.0 and err == 0.0


def test_phi_matches_dense_oracle():
    phi, _ = compute_phi(BENCH)
    np.testing.assert_allclose(phi, dense_phi(0.98, 0.98, 0.9999, 500.0), rtol=1e-7)


@pytest.mark.parametrize("r", [0.5, 0.9, 0.98])
@pytest.mark.parametrize("rho", [1.0, 0.9999])
def test_phi_asymptotic_limit(r, rho):
    params = DeviceParams(r, r, rho, a=1e5)
    phi, _ = compute_phi(params)
    limit = phi_asymptote(r, r, rho)
    assert abs(phi - limit) / phi <= 1e-3


def test_phi_monotone_in_coherence_ratio():
    values = []
    for a in (50.0, 200.0, 500.0, 5000.0, 1e5):
        phi, _ = compute_phi(DeviceParams(0.98, 0.98, 0.9999, a))
        oracle = dense_phi(0.98, 0.98, 0.9999, a)
        np.testing.assert_allclose(phi, oracle, rtol=1e-6)
        values.append(phi)
    assert all(x < y for x, y in zip(values, values[1:]))


def test_phi_at_least_one():
    rng = np.random.default_rng(13)
    for _ in range(50):
        params = DeviceParams(
            rng.uniform(0.05, 0.99), rng.uniform(0.05, 0.99), rng.uniform(0.1, 1.0),
            a=rng.uniform(10.0, 1e4),
        )
        phi, _ = compute_phi(params)
        assert phi >= 1.0 - 1e-9


def test_spec_coherence_ratio_overrides_device():
    fast = WavePacketSpec(coherence_ratio=1e5)
    phi_override, _ = compute_phi(BENCH, fast)
    phi_direct, _ = compute_phi(DeviceParams(0.98, 0.98, 0.9999, 1e5))
    assert phi_override == phi_direct


def test_benchmark_efficiencies():
    report = efficiencies(BENCH)
    assert 0.98 <= report.eta <= 1.0
    assert 0.97 <= report.tau <= 0.99
    assert abs(report.eta - 0.99) <= 0.01
    assert abs(report.tau - 0.98) <= 0.01


def test_lossless_efficiencies_coincide():
    report = efficiencies(DeviceParams(0.7, 0.4, 1.0, a=300.0))
    assert report.eta == report.tau


def test_high_coherence_lossless_is_transparent():
    report = efficiencies(DeviceParams(0.5, 0.5, 1.0, a=1e5))
    assert report.eta > 1.0 - 1e-6
    assert report.tau > 1.0 - 1e-6


def test_throughput_never_exceeds_suppression():
    rng = np.random.default_rng(14)
    for _ in range(30):
        params = DeviceParams(
            rng.uniform(0.05, 0.99), rng.uniform(0.05, 0.99), rng.uniform(0.1, 0.99999),
            a=rng.uniform(20.0, 2e3),
        )
        report = efficiencies(params)
        assert report.tau <= report.eta
        assert report.tau < report.eta  # strict for rho < 1


def test_energy_ratios_cross_check_factorized_path():
    """Direct spectral averaging agrees with the phi factorization."""
    rng = np.random.default_rng(15)
    spec = WavePacketSpec()
    for _ in range(20):
        params = DeviceParams(
            rng.uniform(0.2, 0.99), rng.uniform(0.2, 0.99), rng.uniform(0.5, 1.0),
            a=rng.uniform(50.0, 2e3),
        )
        report = efficiencies(params, spec)
        i_r, i_t = energy_ratios(params, spec)
        budget = 2.0 * (report.quadrature_error + spec.rel_tolerance)
        assert abs((1.0 - report.eta) - i_r) <= budget * max(i_r, 1e-6) + 1e-12
        assert abs(report.tau - i_t) <= budget * i_t + 1e-12
        if params.rho == 1.0:
            assert abs(i_r + i_t - 1.0) <= budget


def test_energy_ratios_match_dense_oracle():
    i_r, i_t = energy_ratios(BENCH)
    oracle_r, oracle_t = dense_energy_ratios(0.98, 0.98, 0.9999, 500.0)
    np.testing.assert_allclose(i_r, oracle_r, rtol=1e-6)
    np.testing.assert_allclose(i_t, oracle_t, rtol=1e-6)


def test_lossless_energy_conservation_integrated():
    rng = np.random.default_rng(16)
    spec = WavePacketSpec()
    for _ in range(20):
        params = DeviceParams(
            rng.uniform(0.2, 0.99), rng.uniform(0.2, 0.99), 1.0, a=rng.uniform(50.0, 2e3)
        )
        i_r, i_t = energy_ratios(params, spec)
        assert abs(i_r + i_t - 1.0) <= 2.0 * spec.rel_tolerance


def test_tightened_tolerance_stays_within_reported_error():
    coarse = efficiencies(BENCH, WavePacketSpec(rel_tolerance=1e-6))
    fine = efficiencies(BENCH, WavePacketSpec(rel_tolerance=1e-10))
    assert abs(coarse.eta - fine.eta) <= max(coarse.quadrature_error * coarse.eta, 1e-12)
    assert abs(coarse.tau - fine.tau) <= max(coarse.quadrature_error * coarse.tau, 1e-12)


def test_quadrature_failure_propagates():
    hopeless = WavePacketSpec(rel_tolerance=1e-20)
    with pytest.raises(QuadratureConvergenceError):
        compute_phi(BENCH, hopeless)
