"""
Errors from precession during emission
======================================

The spin keeps precessing while the trion decays, so the photon comes out
in a superposition of a good mode g and a bad mode f.  A stronger field
means more bad photons.
"""

import numpy as np

from clustergun import wavepacket as wp

x = 0.15
kappa = np.array([0.0, 0.5, 1.0, 2.0, 5.0])
print("  kappa   |g|^2      |f|^2      |g/f|^2")
for k, g, f in zip(kappa, wp.g_closed(kappa, x), wp.f_closed(kappa, x)):
    print(f"  {k:5.1f}  {abs(g) ** 2:.3e}  {abs(f) ** 2:.3e}  {abs(g / f) ** 2:9.1f}")

print("\n  x      p_B        quadrature   corrected  |alpha|")
for x in (0.05, 0.15, 0.5, 1.0):
    print(f"  {x:4.2f}  {wp.p_bad(x):.3e}  {wp.p_bad_quadrature(x):.3e}   "
          f"{wp.p_bad_corrected(x):.3e}  {abs(wp.alpha(x)):.4f}")

# the bad mode overlaps the good one; a small spin rotation removes that part
x = 0.15
phi = np.linspace(0, 0.2, 9)
print("\ncorrection angle", round(wp.correction_angle(x), 5))
for a, e in zip(phi, wp.corrected_error(x, phi)):
    print(f"  phi={a:.3f}  error={e:.5e}")
