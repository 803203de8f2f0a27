"""Dense state-vector simulation of one spin and a register of photons.

Qubits are labelled by integers: ``0`` is the electron spin, ``j >= 1`` is
the j-th emitted photon.  Amplitudes are stored most-significant first in the
order ``(spin, photon_n, ..., photon_1)``, so the newest photon always sits
right after the spin.  Logical encoding: |up> = |0>, |down> = |1>,
|R> = |0>, |L> = -|1>.  The minus sign of |L> is applied by
:func:`emit_photon` and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SPIN = 0
MAX_PHOTONS = 20

NORM_TOL = 1e-10
IMPOSSIBLE_TOL = 1e-14

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-qubit products: _MUL[a, b] == (phase, c) with a @ b == phase * c
_MUL = {}
for _a, _ma in _PAULI.items():
    for _b, _mb in _PAULI.items():
        _prod = _ma @ _mb
        for _c, _mc in _PAULI.items():
            for _ph in (1, -1, 1j, -1j):
                if np.allclose(_prod, _ph * _mc):
                    _MUL[_a, _b] = (_ph, _c)


def _canon_phase(phase) -> complex:
    for ph in (1, -1, 1j, -1j):
        if abs(phase - ph) < 1e-9:
            return complex(ph)
    raise ValueError(f"Pauli phase must be one of +-1, +-i, got {phase!r}")


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of single-qubit Paulis.

    ``ops`` maps qubit labels (``0`` = spin, ``j`` = photon j) to one of
    ``"X"``, ``"Y"``, ``"Z"``; identity factors are dropped.
    """

    phase: complex = 1
    ops: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "phase", _canon_phase(self.phase))
        clean = {}
        for q, p in self.ops.items():
            if p not in _PAULI:
                raise ValueError(f"unknown Pauli {p!r}")
            if int(q) < 0:
                raise ValueError(f"qubit label must be >= 0, got {q}")
            if p != "I":
                clean[int(q)] = p
        object.__setattr__(self, "ops", dict(sorted(clean.items())))

    @classmethod
    def single(cls, qubit: int, pauli: str, phase=1) -> PauliString:
        return cls(phase, {qubit: pauli})

    @classmethod
    def identity(cls) -> PauliString:
        return cls()

    def __mul__(self, other: PauliString) -> PauliString:
        """Operator product ``self @ other`` (``other`` acts first)."""
        phase = self.phase * other.phase
        ops = dict(self.ops)
        for q, b in other.ops.items():
            a = ops.get(q, "I")
            ph, c = _MUL[a, b]
            phase *= ph
            ops[q] = c
        return PauliString(phase, ops)

    def __eq__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        return self.phase == other.phase and self.ops == other.ops

    def __hash__(self):
        return hash((self.phase, tuple(self.ops.items())))

    def __neg__(self):
        return PauliString(-self.phase, self.ops)

    def get(self, qubit: int) -> str:
        return self.ops.get(qubit, "I")

    @property
    def support(self) -> frozenset:
        return frozenset(self.ops)

    @property
    def is_hermitian(self) -> bool:
        return self.phase.imag == 0

    def commutes_with(self, other: PauliString) -> bool:
        anti = sum(
            1 for q, p in self.ops.items()
            if q in other.ops and other.ops[q] != p
        )
        return anti % 2 == 0

    def unsigned(self) -> PauliString:
        return PauliString(1, self.ops)

    def __repr__(self):
        ph = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        if not self.ops:
            return f"PauliString({ph}I)"
        body = " ".join(f"{p}{'s' if q == 0 else q}" for q, p in self.ops.items())
        return f"PauliString({ph}{body})"


@dataclass(frozen=True, eq=False)
class QuantumState:
    n_photons: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** (self.n_photons + 1):
            raise ValueError(
                f"expected {2 ** (self.n_photons + 1)} amplitudes for "
                f"{self.n_photons} photons, got {amps.size}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.n_photons + 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n_qubits)


def _axis(n_photons: int, qubit: int) -> int:
    if qubit == SPIN:
        return 0
    if not 1 <= qubit <= n_photons:
        raise IndexError(f"photon {qubit} does not exist (register has {n_photons})")
    return 1 + n_photons - qubit


def _apply_1q(s: QuantumState, qubit: int, u: np.ndarray) -> QuantumState:
    ax = _axis(s.n_photons, qubit)
    t = np.tensordot(u, s.tensor(), axes=([1], [ax]))
    return QuantumState(s.n_photons, np.moveaxis(t, 0, ax))


def init_spin(a_up: complex, a_down: complex) -> QuantumState:
    v = np.array([a_up, a_down], dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("spin amplitudes must not both be zero")
    return QuantumState(0, v / nrm)


def emit_photon(s: QuantumState) -> QuantumState:
    """Ideal emission: |up> -> |up, R>, |down> -> |down, L>."""
    if s.n_photons >= MAX_PHOTONS:
        raise ValueError(f"dense engine capped at {MAX_PHOTONS} photons")
    old = s.amplitudes.reshape(2, -1)
    new = np.zeros((2, 2, old.shape[1]), dtype=complex)
    new[0, 0] = old[0]
    new[1, 1] = -old[1]  # |L> = -|1>
    return QuantumState(s.n_photons + 1, new)


def spin_rotation_matrix(angle: float) -> np.ndarray:
    """exp(-i angle Y / 2) in the (up, down) basis."""
    c, sn = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -sn], [sn, c]], dtype=complex)


def rotate_spin(s: QuantumState, angle: float) -> QuantumState:
    return _apply_1q(s, SPIN, spin_rotation_matrix(angle))


def apply_unitary(s: QuantumState, qubit: int, u) -> QuantumState:
    """Apply an arbitrary 2x2 matrix to one qubit."""
    return _apply_1q(s, qubit, np.asarray(u, dtype=complex))


def apply_pauli(s: QuantumState, p: PauliString) -> QuantumState:
    t = s.tensor()
    for q, name in p.ops.items():
        ax = _axis(s.n_photons, q)
        t = np.moveaxis(np.tensordot(_PAULI[name], t, axes=([1], [ax])), 0, ax)
    return QuantumState(s.n_photons, p.phase * t)


_X_BASIS = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def measure_qubit(s: QuantumState, which: int, basis: str = "Z",
                  outcome: int | None = None, rng=None):
    """Projective measurement of one qubit.

    Returns ``(outcome, probability, collapsed_state)``.  A measured photon
    is removed from the register and photons above it are relabelled down by
    one; the spin is collapsed but kept.  Pass ``outcome`` to select a
    branch, otherwise it is sampled from ``rng`` (a numpy Generator).
    Z-basis outcome 0 is |up>/|R>, X-basis outcome 0 is |+>.
    """
    if basis not in ("Z", "X"):
        raise ValueError(f"basis must be 'Z' or 'X', got {basis!r}")
    ax = _axis(s.n_photons, which)
    t = np.moveaxis(s.tensor(), ax, 0)
    if basis == "X":
        t = np.tensordot(_X_BASIS.conj().T, t, axes=([1], [0]))
    probs = [float(np.vdot(t[b], t[b]).real) for b in (0, 1)]
    if outcome is None:
        if rng is None:
            raise ValueError("either outcome or rng must be given")
        outcome = int(rng.random() >= probs[0])
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    prob = probs[outcome]
    if prob < IMPOSSIBLE_TOL:
        raise ValueError(f"impossible outcome {outcome} (probability {prob:.3g})")
    branch = t[outcome] / math.sqrt(prob)
    if which == SPIN:
        ket = np.zeros(2, dtype=complex)
        ket[outcome] = 1
        if basis == "X":
            ket = _X_BASIS @ ket
        amps = np.multiply.outer(ket, branch)
        return outcome, prob, QuantumState(s.n_photons, amps)
    return outcome, prob, QuantumState(s.n_photons - 1, branch)


def inner(a: QuantumState, b: QuantumState) -> complex:
    if a.n_photons != b.n_photons:
        raise ValueError(
            f"dimension mismatch: {a.n_photons} vs {b.n_photons} photons"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity_up_to_phase(a: QuantumState, b: QuantumState) -> float:
    return min(1.0, abs(inner(a, b)) ** 2)


def pauli_expectation(s: QuantumState, p: PauliString) -> float:
    if not p.is_hermitian:
        raise ValueError(f"{p!r} is not Hermitian (phase {p.phase})")
    val = inner(s, apply_pauli(s, p))
    return float(val.real)


def reduced_density_matrix(s: QuantumState, keep) -> np.ndarray:
    """Partial trace onto the qubits in ``keep`` (ordered as given)."""
    axes = [_axis(s.n_photons, q) for q in keep]
    rest = [a for a in range(s.n_qubits) if a not in axes]
    t = np.transpose(s.tensor(), axes + rest).reshape(2 ** len(axes), -1)
    return t @ t.conj().T
