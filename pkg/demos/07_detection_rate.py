"""
How often is a whole string detected?
=====================================

One photon per quarter precession period, each collected and detected with
probability eta.  The chance of catching all n falls off as eta^n.
"""

from clustergun import estimator
from clustergun.params import PhysicalParams

p = PhysicalParams()                       # Gamma = 1e10/s, B = 15 mT, g_e = 0.5
print(f"repetition rate {estimator.repetition_rate(p):.3e} Hz")
for n in (4, 8, 12):
    est = estimator.coincidence_rate(p, 0.18, n)
    print(f"n={n:2d}, eta=0.18: {est.coincidence_rate:.3e} Hz")

for target in (1.0, 0.1, 0.01):
    eta = estimator.required_efficiency(p, 12, target)
    print(f"12 photons at {target:g} Hz needs eta = {eta:.3f}")
