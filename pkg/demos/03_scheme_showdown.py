"""Side-by-side comparison of interaction-free detection schemes.

Each scheme tries to announce an object's presence while leaving the photon
unabsorbed. The columns are the probabilities of detecting without a hit,
absorbing the photon, and learning nothing, plus the long-run efficiency
once inconclusive rounds are repeated.
"""

import math

from ifmsim import (
    ZenoParams,
    elitzur_vaidman,
    resonator_opaque_scheme,
    two_cavity_scheme,
    zeno_scheme,
)

rows = [
    ("Mach-Zehnder, 50/50 splitter", elitzur_vaidman(0.5)),
    ("Mach-Zehnder, 99.9% splitter", elitzur_vaidman(0.999)),
    ("polarization rotation, 1 deg/cycle", zeno_scheme(ZenoParams.from_alpha(math.radians(1.0)))),
    ("two coupled cavities, N = 90", two_cavity_scheme(90)),
    ("ring resonator, r = 0.98", resonator_opaque_scheme(0.98)),
]

print(f"{'scheme':38} {'detect':>9} {'hit':>9} {'neither':>9} {'long run':>9}")
for name, res in rows:
    print(
        f"{name:38} {res.detect_no_hit_prob:9.4f} {res.hit_prob:9.4f} "
        f"{res.inconclusive_prob:9.4f} {res.long_run_efficiency:9.4f}"
    )

print()
print("The symmetric interferometer tops out at 25% per shot (33% repeating);")
print("an extreme splitter approaches 50%. The repeated-rotation scheme keeps")
print("the hit probability at a few percent but needs many lossless cycles.")
print("The ring resonator detects with probability r = 0.98 per shot while")
print("hitting the object only r(1 - r) ~ 2% of the time.")

print()
print("Rotation scheme and coupled cavities share the same mathematics:")
for n in (10, 90, 1000):
    q_rot = zeno_scheme(ZenoParams(alpha=math.pi / (2 * n), n_cycles=n)).hit_prob
    q_cav = two_cavity_scheme(n).hit_prob
    print(f"  N = {n:5d}: rotation hit {q_rot:.6f} == cavity hit {q_cav:.6f}")
