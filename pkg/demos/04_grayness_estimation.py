"""Detecting a semi-transparent object from repeated single-photon testings.

A gray object transmits a fraction g of the intensity per pass. Single
trials only ever produce one of five outcomes, but the outcome statistics
pin g down: this script hides a grayness, simulates a measurement campaign,
and recovers the hidden value with a maximum-likelihood fit.
"""

from ifmsim import (
    DeviceParams,
    ObjectModel,
    TrialOutcome,
    estimate_grayness,
    outcome_distribution,
    run_trials,
)

device = DeviceParams(r1=0.98, r2=0.98, rho=0.9999, a=500.0)
hidden = ObjectModel(grayness=0.35)
detector_efficiency = 0.85

print("=== Forward model at a few graynesses (85% detectors) ===")
print(f"{'g':>6} {'D_r':>9} {'D_t':>9} {'hit':>9} {'lost':>9} {'no det':>9}")
for g in (0.0, 0.35, 0.7, 1.0):
    dist = outcome_distribution(device, None, ObjectModel(g), detector_efficiency)
    print(
        f"{g:6.2f} {dist[TrialOutcome.REFLECTED_DETECTOR]:9.4f} "
        f"{dist[TrialOutcome.TRANSMITTED_DETECTOR]:9.4f} "
        f"{dist[TrialOutcome.OBJECT_HIT]:9.4f} {dist[TrialOutcome.LOST]:9.4f} "
        f"{dist[TrialOutcome.NO_DETECTION]:9.4f}"
    )
print()

print(f"=== Campaign: 200000 testings against a hidden g = {hidden.grayness} ===")
stats = run_trials(device, None, hidden, detector_efficiency, 200_000, seed=424242)
for outcome, count in stats.counts.items():
    print(f"  {outcome.value:21} {count:7d}")

g_hat, (lo, hi) = estimate_grayness(stats, device, None, detector_efficiency)
print()
print(f"maximum-likelihood grayness: {g_hat:.4f}")
print(f"95% interval:                [{lo:.4f}, {hi:.4f}]")
print(f"hidden value {hidden.grayness} {'inside' if lo <= hidden.grayness <= hi else 'OUTSIDE'} the interval")

print()
print("=== Fewer trials widen the interval ===")
for n in (1000, 10_000, 100_000):
    small = run_trials(device, None, hidden, detector_efficiency, n, seed=7)
    g_small, (lo_s, hi_s) = estimate_grayness(small, device, None, detector_efficiency)
    print(f"  n = {n:6d}: g_hat = {g_small:.4f}, interval width = {hi_s - lo_s:.4f}")
