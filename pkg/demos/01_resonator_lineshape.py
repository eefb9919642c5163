"""Walk through the monochromatic line shape of the ring resonator.

Shows the dark reflected port of a matched lossless ring on resonance, how
loss breaks the perfect interference, and how an opaque obstruction reduces
the response to the simple three-way split between direct reflection,
absorption, and straight-through tunnelling.
"""

import numpy as np

from ifmsim import (
    DeviceParams,
    monochromatic_reflectance,
    monochromatic_transmittance,
    partial_sum_reflected_amplitude,
    reflected_amplitude,
)

print("=== Matched lossless ring (r1 = r2 = 0.5, rho = 1) ===")
ring = DeviceParams(r1=0.5, r2=0.5, rho=1.0)
print(f"{'psi':>8} {'reflect':>12} {'transmit':>12} {'sum':>8}")
for psi in np.linspace(0.0, np.pi, 9):
    reflect = monochromatic_reflectance(ring, psi)
    transmit = monochromatic_transmittance(ring, psi)
    print(f"{psi:8.4f} {reflect:12.6f} {transmit:12.6f} {reflect + transmit:8.4f}")
print("On resonance the reflected port is perfectly dark and everything is")
print("transmitted; off resonance the ring hands light back.\n")

print("=== The same ring with 2% round-trip loss (rho = 0.99) ===")
lossy = DeviceParams(r1=0.5, r2=0.5, rho=0.99)
r0 = monochromatic_reflectance(lossy, 0.0)
t0 = monochromatic_transmittance(lossy, 0.0)
print(f"on resonance: reflect = {r0:.6f}, transmit = {t0:.6f}, "
      f"absorbed/scattered = {1 - r0 - t0:.6f}\n")

print("=== Closed form vs explicit round-trip sum ===")
probe = DeviceParams(r1=0.98, r2=0.98, rho=0.9999)
closed = reflected_amplitude(probe, 0.3)
for n_terms in (1, 10, 100, 1000):
    truncated = partial_sum_reflected_amplitude(probe, 0.3, n_terms)
    print(f"after {n_terms:5d} loops: |gap to closed form| = {abs(closed - truncated):.3e}")
print("The geometric series converges to the closed form as more loops interfere.\n")

print("=== Opaque obstruction (rho = 0): nothing survives one loop ===")
blocked = DeviceParams(r1=0.98, r2=0.98, rho=0.0)
reflect = monochromatic_reflectance(blocked, 0.0)
transmit = monochromatic_transmittance(blocked, 0.0)
print(f"direct reflection   : {reflect:.4f}   (= r1)")
print(f"absorbed by object  : {1 - reflect - transmit:.4f}   (= r2 (1 - r1))")
print(f"straight through    : {transmit:.4f}   (= (1 - r1)(1 - r2))")
