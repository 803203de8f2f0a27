"""
Spin errors stay local
======================

A Pauli error on the spin does not spread through the chain.  It becomes an
error on at most two of the photons emitted after it.  Every claim below is
checked against a brute-force state vector.
"""

from clustergun import errormodel
from clustergun.errormodel import ErrorEvent

n = 6
for kind in "XYZ":
    e = ErrorEvent(2, kind)
    print(f"{kind} after cycle 2  ->  {errormodel.localize(e, n)!r}"
          f"   fidelity {errormodel.verify_localization(n, e):.12f}")

# errors in the last cycles have nowhere to go but the spin
print("Y after cycle 6 ->", errormodel.localize(ErrorEvent(6, "Y"), n))

# the obvious guess (Y lands on the next photon only) is wrong
bad = errormodel.verify_localization(n, ErrorEvent(2, "Y"), rule=errormodel.localize_y_only)
print(f"wrong rule fidelity: {bad:.3f}")

rows = errormodel.localization_suite(n)
print(f"{len(rows)} (kind, cycle) checks, min fidelity {min(r[2] for r in rows):.12f}")

# the same Y error can also be blamed on Z errors, via a stabilizer
for cycle in (1, 3, 5):
    sg = errormodel.scapegoat_equivalence(n, cycle)
    print(f"Y after cycle {cycle} is equivalent to {sg.representative!r} (fidelity {sg.fidelity:.6f})")
