"""The pulse schedule of the photon machine gun.

One cycle is: excite and emit a photon (the spin-controlled NOT, with the
|L> = -|1> sign), then let the spin precess by the cycle's angle about y.
All-pi/2 schedules give a linear cluster, all-0 schedules a GHZ state, and a
pi at cycle j makes photons j and j+1 a redundantly encoded pair.

The target cluster is defined as the output of that circuit, not as the
textbook CZ graph state.  Stabilizers are obtained by pushing the initial
ones through the same Clifford circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import qsim
from .qsim import SPIN, PauliString, QuantumState

HALF_PI = math.pi / 2
STANDARD_ANGLES = (0.0, HALF_PI, math.pi)


@dataclass(frozen=True)
class Schedule:
    n_photons: int
    rotations: tuple = None
    init: str = "plus"
    spin: tuple = field(default=(1, 1))

    def __post_init__(self):
        if self.n_photons < 1:
            raise ValueError(f"n_photons must be >= 1, got {self.n_photons}")
        rot = self.rotations
        if rot is None:
            rot = (HALF_PI,) * self.n_photons
        rot = tuple(float(a) for a in rot)
        if len(rot) != self.n_photons:
            raise ValueError(
                f"need {self.n_photons} rotation angles, got {len(rot)}"
            )
        object.__setattr__(self, "rotations", rot)
        if self.init not in ("plus", "measure-first-photon"):
            raise ValueError(f"unknown init mode {self.init!r}")

    @property
    def is_standard(self) -> bool:
        return all(
            any(math.isclose(a, s, abs_tol=1e-12) for s in STANDARD_ANGLES)
            for a in self.rotations
        )

    @classmethod
    def ghz(cls, n_photons: int) -> Schedule:
        return cls(n_photons, (0.0,) * n_photons)

    @classmethod
    def redundant(cls, n_photons: int, pi_cycle: int) -> Schedule:
        if not 1 <= pi_cycle < n_photons:
            raise ValueError(
                f"pi_cycle must be in [1, {n_photons - 1}], got {pi_cycle}"
            )
        rot = [HALF_PI] * n_photons
        rot[pi_cycle - 1] = math.pi
        return cls(n_photons, tuple(rot))


class HeraldedRun(NamedTuple):
    state: QuantumState
    outcome: int
    probability: float
    correction: PauliString


def run_cycles(s: QuantumState, rotations, spin_errors=None, emission_errors=None):
    """Apply emission + rotation cycles to ``s``.

    ``spin_errors`` maps a cycle index (1-based, counted from the first
    cycle run here) to a Pauli name applied to the spin after that cycle's
    rotation.  ``emission_errors`` does the same but inserts the Pauli right
    after the emission, before the rotation.
    """
    spin_errors = spin_errors or {}
    emission_errors = emission_errors or {}
    for i, angle in enumerate(rotations, start=1):
        s = qsim.emit_photon(s)
        if i in emission_errors:
            s = qsim.apply_pauli(s, PauliString.single(SPIN, emission_errors[i]))
        s = qsim.rotate_spin(s, angle)
        if i in spin_errors:
            s = qsim.apply_pauli(s, PauliString.single(SPIN, spin_errors[i]))
    return s


def run_ideal(sch: Schedule, *, outcome=None, rng=None) -> QuantumState:
    """Final spin + photons state of an error-free run.

    With ``init="measure-first-photon"`` the herald photon is Z-measured
    and discarded; use :func:`run_heralded` to get the outcome and the
    Pauli correction that goes with it.
    """
    if sch.init == "measure-first-photon":
        return run_heralded(sch, outcome=outcome, rng=rng).state
    s = qsim.init_spin(*sch.spin)
    return run_cycles(s, sch.rotations)


def run_heralded(sch: Schedule, *, outcome=None, rng=None) -> HeraldedRun:
    """Initialise the spin by measuring an extra first photon.

    The herald cycle is a normal emission plus pi/2 rotation; Z-measuring
    its photon projects the spin onto |up> or |down>, after which the
    rotation leaves it in the +1 or -1 eigenstate of X.  Outcome 1 is
    therefore a Z error on the spin before the first real cycle, which
    localizes onto photon 1.  The returned ``correction`` undoes it.
    """
    s = qsim.init_spin(*sch.spin)
    s = qsim.rotate_spin(qsim.emit_photon(s), HALF_PI)
    m, prob, s = qsim.measure_qubit(s, 1, "Z", outcome=outcome, rng=rng)
    s = run_cycles(s, sch.rotations)
    corr = PauliString.single(1, "Z") if m == 1 else PauliString.identity()
    return HeraldedRun(s, m, prob, corr)


def target_cluster(n_qubits: int) -> QuantumState:
    """Reference linear cluster on the spin plus ``n_qubits - 1`` photons."""
    if n_qubits < 2:
        raise ValueError(f"a cluster needs >= 2 qubits, got {n_qubits}")
    return run_ideal(Schedule(n_qubits - 1))


# --- Clifford conjugation of Pauli strings ---------------------------------

def _conj_table_1q(u):
    table = {}
    for a in "XYZ":
        m = u @ qsim._PAULI[a] @ u.conj().T
        for b in "XYZ":
            for ph in (1, -1):
                if np.allclose(m, ph * qsim._PAULI[b]):
                    table[a] = (ph, b)
    if len(table) != 3:
        raise ValueError("gate is not a single-qubit Clifford")
    return table


def _cnot_table():
    cx = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
    table = {}
    names = "IXYZ"
    for a in names:
        for b in names:
            m = cx @ np.kron(qsim._PAULI[a], qsim._PAULI[b]) @ cx.conj().T
            for c in names:
                for d in names:
                    for ph in (1, -1):
                        if np.allclose(m, ph * np.kron(qsim._PAULI[c], qsim._PAULI[d])):
                            table[a, b] = (ph, c, d)
    return table


_CNOT = _cnot_table()
_Z_CONJ = _conj_table_1q(qsim._PAULI["Z"])
_ROT_CACHE = {}


def _rotation_table(angle):
    key = round(angle % (4 * math.pi), 12)
    if key not in _ROT_CACHE:
        _ROT_CACHE[key] = _conj_table_1q(qsim.spin_rotation_matrix(angle))
    return _ROT_CACHE[key]


def conjugate_1q(p: PauliString, qubit: int, table) -> PauliString:
    a = p.get(qubit)
    if a == "I":
        return p
    ph, b = table[a]
    ops = dict(p.ops)
    ops[qubit] = b
    return PauliString(p.phase * ph, ops)


def conjugate_cnot(p: PauliString, control: int, target: int) -> PauliString:
    ph, c, d = _CNOT[p.get(control), p.get(target)]
    ops = dict(p.ops)
    ops[control], ops[target] = c, d
    return PauliString(p.phase * ph, ops)


def conjugate_cycle(p: PauliString, photon: int, angle: float) -> PauliString:
    """Push ``p`` through one cycle that emits ``photon`` then rotates by ``angle``."""
    p = conjugate_1q(p, SPIN, _Z_CONJ)
    p = conjugate_cnot(p, SPIN, photon)
    return conjugate_1q(p, SPIN, _rotation_table(angle))


def schedule_stabilizers(sch: Schedule) -> list:
    """Stabilizer generators of ``run_ideal(sch)`` for ``init="plus"``.

    Requires a Clifford schedule (angles multiples of pi/2) and a |+> spin.
    """
    if sch.init != "plus" or sch.spin != (1, 1):
        raise ValueError("stabilizers are tracked only for the |+> initial spin")
    gens = [PauliString.single(SPIN, "X")]
    for j, angle in enumerate(sch.rotations, start=1):
        gens.append(PauliString.single(j, "Z"))
        gens = [conjugate_cycle(g, j, angle) for g in gens]
    return gens


def cluster_stabilizers(n_qubits: int) -> list:
    if n_qubits < 2:
        raise ValueError(f"a cluster needs >= 2 qubits, got {n_qubits}")
    return schedule_stabilizers(Schedule(n_qubits - 1))


def stabilizer_group(gens):
    """All 2**len(gens) products of the generators."""
    group = [PauliString.identity()]
    for g in gens:
        group += [g * h for h in group]
    return group


def redundant_pair_check(n_photons: int, pi_cycle: int) -> PauliString:
    """Signed Z_j Z_{j+1} stabilizing the pair straddling the pi rotation.

    The sign is read off the simulated state rather than assumed.
    """
    sch = Schedule.redundant(n_photons, pi_cycle)
    s = run_ideal(sch)
    zz = PauliString(1, {pi_cycle: "Z", pi_cycle + 1: "Z"})
    val = qsim.pauli_expectation(s, zz)
    if not math.isclose(abs(val), 1.0, abs_tol=1e-10):
        raise ArithmeticError(f"Z{pi_cycle}Z{pi_cycle + 1} has expectation {val}")
    return zz if val > 0 else -zz
