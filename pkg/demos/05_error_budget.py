"""
The per-photon error budget
===========================

A large field makes the emission error p_B grow like x^2, a small field
makes each cycle slow and lets the spin dephase.  The total error has a
sweet spot in between.
"""

import numpy as np

from clustergun import errormodel, params

y = 1e-4        # 1 / (Gamma T2)
xs, ys, vals = errormodel.contour_grid((0.01, 1.0), (y, 1e-2), 200, 2)
row = vals[0]
k = int(np.argmin(row))
print(f"at y={y:g}: best x = {xs[k]:.4f}, total error {row[k]:.5f}")
print(f"field for that x at Gamma=1e10/s, g_e=0.5: {params.b_field_from_x(xs[k], 1e10, 0.5) * 1e3:.1f} mT")

print("\n  x      corrected   uncorrected")
for x in (0.02, 0.05, 0.066, 0.1, 0.2):
    print(f"  {x:5.3f}  {errormodel.total_error(x, y):.5f}     "
          f"{errormodel.total_error(x, y, corrected=False):.5f}")

# a longer T2, e.g. with a spin echo, moves the optimum to weaker fields
for y in (1e-4, 1e-5, 1e-6):
    _, _, v = errormodel.contour_grid((0.005, 1.0), (y, 2 * y), 400, 1)
    print(f"y={y:g}: minimum total error {v.min():.2e}")
