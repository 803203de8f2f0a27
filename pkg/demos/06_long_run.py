"""
Firing the gun for a long time
==============================

No state vector is needed to follow errors through a long chain: each spin
error is pushed onto the photons it lands on and recorded in a Pauli frame.
"""

from clustergun import errormodel, protocol, wavepacket
from clustergun.errormodel import PauliChannel

ch = errormodel.dephasing_channel(0.066, 1e-4)
p_b = wavepacket.p_bad_corrected(0.066)
print(f"per cycle: p_y = {ch.p_y:.3e}, bad emission p_B = {p_b:.3e}")

run = errormodel.pauli_frame_run(1_000_000, ch, p_b, seed=1)
rate, se = run.error_rate()
print(f"one million photons: error rate {rate:.4e} +/- {se:.1e}")
print("expected in the bulk:", errormodel.expected_photon_rates(4, ch, p_b)[-1].sum())

# cross-check the frame bookkeeping against explicit state vectors
ch = PauliChannel(0.02, 0.05, 0.03)
gens = protocol.cluster_stabilizers(5)
brute = errormodel.trajectory_syndromes(4, ch, 0.04, 2000, seed=2)
frames = errormodel.frame_syndromes(errormodel.pauli_frame_run(4, ch, 0.04, seed=3, shots=2000), gens)
print("syndrome frequencies, state vector:", brute.mean(axis=0).round(3))
print("syndrome frequencies, Pauli frame: ", frames.mean(axis=0).round(3))
