"""
A linear cluster from a single spin
===================================

Each cycle excites the dot, lets it emit a photon whose polarization copies
the spin, then lets the spin precess a quarter turn.  Three cycles of this
already show the structure of the whole chain.
"""

import math

import numpy as np

from clustergun import protocol, qsim
from clustergun.qsim import SPIN, PauliString

# two photons plus the spin: read the amplitudes in (spin, photon 2, photon 1) order
state = protocol.run_ideal(protocol.Schedule(2))
print("3-qubit amplitudes x sqrt(8):")
for i, a in enumerate(state.amplitudes):
    print(f"  |{i:03b}>  {a.real * math.sqrt(8):+.3f}")

# the circuit output is pinned down by its stabilizers
for g in protocol.cluster_stabilizers(3):
    print(f"<{g!r}> = {qsim.pauli_expectation(state, g):+.3f}")

# skipping the precession gives a GHZ state instead
ghz = protocol.run_ideal(protocol.Schedule.ghz(3))
print("GHZ support:", [f"{i:04b}" for i in np.flatnonzero(np.abs(ghz.amplitudes) > 1e-12)])

# measuring the spin of a GHZ state destroys all entanglement among the photons,
# while measuring the spin of the cluster leaves a shorter cluster behind
for name, sch in (("cluster", protocol.Schedule(4)), ("ghz", protocol.Schedule.ghz(4))):
    s = protocol.run_ideal(sch)
    _, _, post = qsim.measure_qubit(s, SPIN, "Z", outcome=0)
    photons = post.amplitudes.reshape(2, -1)[0]
    sv = np.linalg.svd(photons.reshape(2, -1), compute_uv=False)
    print(f"{name}: Schmidt coefficients of photon 4 vs rest after spin measurement: {np.round(sv, 3)}")

# a full pi rotation between two emissions makes a redundantly encoded pair
zz = protocol.redundant_pair_check(4, 2)
print("redundant pair stabilizer:", zz)

# heralded start: measure an extra photon, keep the outcome, fix it with one Z
for outcome in (0, 1):
    run = protocol.run_heralded(protocol.Schedule(3, init="measure-first-photon"), outcome=outcome)
    fixed = qsim.apply_pauli(run.state, run.correction)
    ok = all(abs(qsim.pauli_expectation(fixed, g) - 1) < 1e-10
             for g in protocol.schedule_stabilizers(protocol.Schedule(3)))
    print(f"herald outcome {outcome}: correction {run.correction!r}, stabilizers hold: {ok}")
