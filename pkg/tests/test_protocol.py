import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clustergun import protocol, qsim
from clustergun.protocol import Schedule
from clustergun.qsim import SPIN, PauliString, QuantumState


def test_three_qubit_cluster_amplitudes():
    s = protocol.run_ideal(Schedule(2))
    expected = np.array([1, 1, 1, -1, 1, 1, -1, 1]) / math.sqrt(8)
    assert np.allclose(s.amplitudes, expected, atol=1e-12)
    assert np.allclose(protocol.target_cluster(3).amplitudes, expected, atol=1e-12)


def test_ghz_mode():
    s = protocol.run_ideal(Schedule.ghz(3))
    expected = np.zeros(16)
    expected[0] = 1 / math.sqrt(2)        # |up RRR>
    expected[15] = -1 / math.sqrt(2)      # |down LLL>, three factors of -1
    assert np.allclose(s.amplitudes, expected, atol=1e-12)


def test_single_cycle_is_bell_like():
    s = protocol.run_ideal(Schedule(1))
    ref = qsim.rotate_spin(qsim.emit_photon(qsim.init_spin(1, 1)), math.pi / 2)
    assert qsim.fidelity_up_to_phase(s, ref) == pytest.approx(1, abs=1e-12)
    sv = np.linalg.svd(s.amplitudes.reshape(2, 2), compute_uv=False)
    assert np.allclose(sv, [1 / math.sqrt(2)] * 2)


def test_end_qubits_maximally_mixed():
    s = protocol.target_cluster(3)
    for q in (SPIN, 1):
        rho = qsim.reduced_density_matrix(s, [q])
        assert np.allclose(rho, np.eye(2) / 2, atol=1e-12)


def test_schedule_validation():
    assert Schedule(3).is_standard
    assert not Schedule(2, (0.3, math.pi / 2)).is_standard
    with pytest.raises(ValueError):
        Schedule(0)
    with pytest.raises(ValueError):
        Schedule(3, (0.0,))
    with pytest.raises(ValueError):
        Schedule(2, init="bogus")
    with pytest.raises(ValueError):
        Schedule.redundant(3, 3)


def test_known_generators_n3():
    gens = protocol.cluster_stabilizers(3)
    labels = [repr(g) for g in gens]
    assert labels == ["PauliString(+Xs X1)", "PauliString(+Zs Z1 X2)", "PauliString(+Xs Z2)"]


@pytest.mark.parametrize("n", range(2, 11))
def test_stabilizers_hold(n):
    target = protocol.target_cluster(n)
    gens = protocol.cluster_stabilizers(n)
    assert len(gens) == n
    for g in gens:
        assert g.is_hermitian
        assert qsim.pauli_expectation(target, g) == pytest.approx(1, abs=1e-10)
    for a in gens:
        for b in gens:
            assert a.commutes_with(b)
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            assert qsim.pauli_expectation(target, a * b) == pytest.approx(1, abs=1e-10)


def test_stabilizer_group_size():
    group = protocol.stabilizer_group(protocol.cluster_stabilizers(4))
    assert len(group) == 16
    assert len(set(group)) == 16


def test_redundant_pair_sign():
    zz = protocol.redundant_pair_check(3, 2)
    assert zz == -PauliString(1, {2: "Z", 3: "Z"})
    s = protocol.run_ideal(Schedule.redundant(3, 2))
    assert qsim.pauli_expectation(s, zz) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        protocol.redundant_pair_check(3, 0)


def test_redundant_pair_outcomes_correlate(rng):
    s0 = protocol.run_ideal(Schedule.redundant(4, 2))
    sign = protocol.redundant_pair_check(4, 2).phase
    for _ in range(200):
        # measure the later photon first so photon 2 keeps its label
        m3, _, s = qsim.measure_qubit(s0, 3, "Z", rng=rng)
        m2, _, _ = qsim.measure_qubit(s, 2, "Z", rng=rng)
        assert (-1) ** (m2 + m3) == sign


@pytest.mark.parametrize("n", [3, 4, 5])
def test_plain_schedule_has_no_zz_stabilizer(n):
    s = protocol.run_ideal(Schedule(n))
    for j in range(1, n):
        val = qsim.pauli_expectation(s, PauliString(1, {j: "Z", j + 1: "Z"}))
        assert -1 < val < 1
        assert abs(abs(val) - 1) > 0.1


@pytest.mark.parametrize("n", range(2, 9))
def test_spin_measurement_disentangles(n):
    s = protocol.run_ideal(Schedule(n))
    target = protocol.target_cluster(n)
    for m in (0, 1):
        _, p, post = qsim.measure_qubit(s, SPIN, "Z", outcome=m)
        assert p == pytest.approx(0.5)
        photons = post.amplitudes.reshape(2, -1)[m]
        # photon n takes over the spin's slot in the shorter cluster
        rest = QuantumState(n - 1, photons / np.linalg.norm(photons))
        ref = target if m == 0 else qsim.apply_pauli(target, PauliString.single(SPIN, "Z"))
        assert qsim.fidelity_up_to_phase(rest, ref) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("outcome", [0, 1])
@pytest.mark.parametrize("n", [1, 3, 5])
def test_heralded_init_either_outcome(n, outcome):
    sch = Schedule(n, init="measure-first-photon")
    run = protocol.run_heralded(sch, outcome=outcome)
    assert run.probability == pytest.approx(0.5)
    assert run.state.n_photons == n
    fixed = qsim.apply_pauli(run.state, run.correction)
    for g in protocol.schedule_stabilizers(Schedule(n)):
        assert qsim.pauli_expectation(fixed, g) == pytest.approx(1, abs=1e-10)
    assert np.allclose(protocol.run_ideal(sch, outcome=outcome).amplitudes, run.state.amplitudes)


def test_ghz_collapses_on_spin_measurement():
    s = protocol.run_ideal(Schedule.ghz(4))
    _, _, post = qsim.measure_qubit(s, SPIN, "Z", outcome=1)
    nonzero = np.flatnonzero(np.abs(post.amplitudes) > 1e-12)
    assert len(nonzero) == 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([0.0, math.pi / 2, math.pi]), min_size=1, max_size=6))
def test_schedule_stabilizers_any_clifford_schedule(rot):
    sch = Schedule(len(rot), tuple(rot))
    s = protocol.run_ideal(sch)
    for g in protocol.schedule_stabilizers(sch):
        assert qsim.pauli_expectation(s, g) == pytest.approx(1, abs=1e-10)
