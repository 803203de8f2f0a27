"""Spin errors, their localization onto photons, and per-photon error rates.

Spin Paulis are inserted at the end of a cycle, after its rotation.  One
pi/2 cycle maps a spin error onto the photon it emits plus, for X and Y, a
Z on the spin at the end of the following cycle, which in turn becomes a Z
on the photon after that:

    Z @ n  ->  Z_{n+1}
    Y @ n  ->  Y_{n+1} Z_{n+2}
    X @ n  ->  X_{n+1} Z_{n+2}

Factors that would land on photons not (yet) emitted are returned as a
residual spin Pauli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import protocol, qsim, wavepacket
from .params import cycle_over_t2_dimensionless
from .qsim import SPIN, PauliString

KINDS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PauliChannel:
    p_x: float = 0.0
    p_y: float = 0.0
    p_z: float = 0.0

    def __post_init__(self):
        for name in ("p_x", "p_y", "p_z"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.p_x + self.p_y + self.p_z > 1.0 + 1e-15:
            raise ValueError("channel probabilities sum to more than 1")

    @property
    def p_any(self) -> float:
        return self.p_x + self.p_y + self.p_z


@dataclass(frozen=True)
class ErrorEvent:
    cycle: int
    kind: str
    location: str = "spin"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.cycle < 1:
            raise ValueError(f"cycle must be >= 1, got {self.cycle}")
        if self.location != "spin":
            raise ValueError("only spin errors are modelled")


def dephasing_channel(x: float, y: float, suppressed_xz: bool = True,
                      p_x: float = 0.0, p_z: float = 0.0) -> PauliChannel:
    """Per-cycle spin channel from a finite T2.

    p_y = (1 - exp(-T_cycle / T2)) / 2 with T_cycle / T2 = (pi/2) y / x.
    With ``suppressed_xz`` (default) p_x and p_z are zero; otherwise the
    given values are used, e.g. an extra p_z standing in for cross
    dephasing of the exciton.
    """
    if y < 0:
        raise ValueError("y must be >= 0")
    if y == 0:
        p_y = 0.0
    else:
        if x <= 0:
            raise ValueError("x = 0 with finite T2: cycle time undefined")
        p_y = 0.5 * -math.expm1(-cycle_over_t2_dimensionless(x, y))
    if suppressed_xz:
        return PauliChannel(0.0, p_y, 0.0)
    return PauliChannel(p_x, p_y, p_z)


_ONE_CYCLE = {
    # kind -> (phase, photon factor, spin factor at the end of next cycle)
    "I": (1, "I", "I"),
    "X": (1, "X", "Z"),
    "Y": (1, "Y", "Z"),
    "Z": (1, "Z", "I"),
}


def localize(e: ErrorEvent, n_total: int) -> PauliString:
    """Photon Pauli equivalent to spin error ``e`` on a run of ``n_total`` cycles."""
    if e.cycle > n_total:
        raise ValueError(f"error at cycle {e.cycle} beyond run length {n_total}")
    n = e.cycle
    if e.kind == "I":
        return PauliString.identity()
    if n == n_total:
        return PauliString.single(SPIN, e.kind)
    phase, first, carry = _ONE_CYCLE[e.kind]
    ops = {n + 1: first}
    if carry != "I":
        if n + 2 <= n_total:
            ops[n + 2] = carry
        else:
            ops[SPIN] = carry
    return PauliString(phase, ops)


def errored_run(n_photons: int, events) -> qsim.QuantumState:
    """Ideal pi/2 run with the given spin errors inserted (brute force)."""
    spin_errors = {}
    for e in events:
        spin_errors[e.cycle] = _compose_name(e.kind, spin_errors.get(e.cycle, "I"))
    spin_errors = {c: k for c, k in spin_errors.items() if k != "I"}
    rotations = (protocol.HALF_PI,) * n_photons
    return protocol.run_cycles(qsim.init_spin(1, 1), rotations, spin_errors=spin_errors)


def _compose_name(a, b):
    return qsim._MUL[a, b][1]


def verify_localization(n_photons: int, e: ErrorEvent, rule=None) -> float:
    """Fidelity between the errored run and the localized error on the target.

    ``rule`` defaults to :func:`localize`; pass another callable with the
    same signature to test alternatives.
    """
    if n_photons > 8:
        raise ValueError("brute-force check limited to 8 photons")
    rule = rule or localize
    actual = errored_run(n_photons, [e])
    predicted = qsim.apply_pauli(protocol.target_cluster(n_photons + 1), rule(e, n_photons))
    return qsim.fidelity_up_to_phase(actual, predicted)


def localize_y_only(e: ErrorEvent, n_total: int) -> PauliString:
    """Deliberately wrong rule (Y -> Y on the next photon only); a negative control."""
    if e.kind == "I" or e.cycle == n_total:
        return localize(e, n_total)
    return PauliString.single(e.cycle + 1, e.kind)


def localization_suite(n_photons: int):
    """Fidelity for every (kind, cycle) pair; returns a list of rows."""
    rows = []
    for kind in "XYZ":
        for cycle in range(1, n_photons + 1):
            f = verify_localization(n_photons, ErrorEvent(cycle, kind))
            rows.append((kind, cycle, f))
    return rows


class Scapegoat(NamedTuple):
    representative: PauliString
    fidelity: float
    literal_support: bool   # supported on photon `cycle` and photon 1 only


def scapegoat_equivalence(n_photons: int, cycle: int) -> Scapegoat:
    """Z-type equivalent of a Y spin error pushed onto earlier photons.

    Searches the stabilizer group of the target for elements that turn
    ``localize(Y @ cycle)`` into a product of Z's touching photon ``cycle``,
    preferring support {cycle, 1}, then lowest weight, then lowest labels.
    The pick is checked against the brute-force errored run.
    """
    if not 1 <= cycle <= n_photons:
        raise ValueError(f"cycle must be in [1, {n_photons}]")
    if n_photons > 8:
        raise ValueError("stabilizer search limited to 8 photons")
    loc = localize(ErrorEvent(cycle, "Y"), n_photons)
    group = protocol.stabilizer_group(protocol.cluster_stabilizers(n_photons + 1))
    literal = {cycle, 1}
    candidates = []
    for g in group:
        r = loc * g
        if r.ops and cycle in r.ops and all(p == "Z" for p in r.ops.values()):
            candidates.append(r)
    if not candidates:
        raise LookupError(f"no Z-type representative touches photon {cycle}")

    def rank(r):
        return (set(r.ops) != literal, len(r.ops), sorted(r.ops))

    best = min(candidates, key=rank)
    actual = errored_run(n_photons, [ErrorEvent(cycle, "Y")])
    fid = qsim.fidelity_up_to_phase(
        actual, qsim.apply_pauli(protocol.target_cluster(n_photons + 1), best)
    )
    return Scapegoat(best, fid, set(best.ops) == literal)


def total_error(x: float, y: float, corrected: bool = True) -> float:
    """1 - (1 - p_B)(1 - p_y), the per-photon Pauli error probability."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0:
        if y > 0:
            raise ValueError("x = 0 with finite T2: cycle time undefined")
        return 0.0
    p_b = wavepacket.p_bad_corrected(x) if corrected else wavepacket.p_bad(x)
    p_y = dephasing_channel(x, y).p_y
    return 1.0 - (1.0 - p_b) * (1.0 - p_y)


def contour_grid(x_range, y_range, nx: int, ny: int, corrected: bool = True,
                 log: bool = True):
    """Total error on an ``nx`` by ``ny`` grid.

    Returns ``(xs, ys, values)`` with ``values[i, j]`` at ``(xs[j], ys[i])``.
    """
    for lo, hi in (x_range, y_range):
        if not 0 < lo < hi:
            raise ValueError(f"range must satisfy 0 < lo < hi, got {(lo, hi)}")
    if nx < 1 or ny < 1:
        raise ValueError("nx and ny must be >= 1")
    space = np.geomspace if log else np.linspace
    xs = space(*x_range, nx)
    ys = space(*y_range, ny)
    p_b = np.array([
        wavepacket.p_bad_corrected(x) if corrected else wavepacket.p_bad(x)
        for x in xs
    ])
    p_y = 0.5 * -np.expm1(-0.5 * np.pi * ys[:, None] / xs[None, :])
    return xs, ys, 1.0 - (1.0 - p_b[None, :]) * (1.0 - p_y)


# --- Pauli-frame Monte Carlo ------------------------------------------------

@dataclass(frozen=True, eq=False)
class FrameRun:
    """Per-photon Pauli frames from :func:`pauli_frame_run`.

    ``x_bits`` / ``z_bits`` have shape (shots, n_photons); column ``j - 1``
    is photon j, and the Pauli is X^x Z^z up to phase.  ``spin_x`` /
    ``spin_z`` hold the residual spin frame at the end of the run.
    """

    x_bits: np.ndarray
    z_bits: np.ndarray
    spin_x: np.ndarray
    spin_z: np.ndarray

    @property
    def shots(self) -> int:
        return self.x_bits.shape[0]

    @property
    def n_photons(self) -> int:
        return self.x_bits.shape[1]

    def pauli(self, photon: int, shot: int = 0) -> PauliString:
        x = self.x_bits[shot, photon - 1]
        z = self.z_bits[shot, photon - 1]
        return PauliString.single(photon, _BITS_TO_NAME[x, z])

    def frame(self, shot: int = 0) -> PauliString:
        """Whole-register Pauli (unsigned) for one shot, spin included."""
        ops = {
            j + 1: _BITS_TO_NAME[x, z]
            for j, (x, z) in enumerate(zip(self.x_bits[shot], self.z_bits[shot]))
        }
        ops[SPIN] = _BITS_TO_NAME[self.spin_x[shot], self.spin_z[shot]]
        return PauliString(1, ops)

    def photon_rates(self):
        """Empirical (px, py, pz) per photon, array of shape (n_photons, 3)."""
        x, z = self.x_bits, self.z_bits
        px = np.mean(x & ~z, axis=0)
        py = np.mean(x & z, axis=0)
        pz = np.mean(~x & z, axis=0)
        return np.stack([px, py, pz], axis=1)

    def error_rate(self, blocks: int = 100):
        """Mean fraction of photons carrying any Pauli, with its standard error.

        Neighbouring photons share error sources, so the standard error is
        taken from batch means over contiguous blocks of photons (or over
        shots when there are several).
        """
        err = (self.x_bits | self.z_bits).astype(float)
        if self.shots > 1:
            means = err.mean(axis=1)
        else:
            nb = max(1, min(blocks, err.shape[1] // 10))
            means = np.array([b.mean() for b in np.array_split(err[0], nb)])
        if means.size < 2:
            return float(err.mean()), math.nan
        return float(err.mean()), float(means.std(ddof=1) / math.sqrt(means.size))


_BITS_TO_NAME = {
    (False, False): "I", (True, False): "X", (True, True): "Y", (False, True): "Z",
}


def sample_cycle_errors(rng, shots: int, n_cycles: int, channel: PauliChannel, p_b: float):
    """Spin error per cycle as (x, z) bit arrays of shape (shots, n_cycles).

    Channel errors and bad emission events (a Y) are drawn independently
    and multiplied.
    """
    u = rng.random((shots, n_cycles))
    # [0, px) -> X, [px, px+py) -> Y, [px+py, px+py+pz) -> Z
    cx = u < channel.p_x + channel.p_y
    cz = (u >= channel.p_x) & (u < channel.p_any)
    bad = rng.random((shots, n_cycles)) < p_b
    return cx ^ bad, cz ^ bad


def pauli_frame_run(n_photons: int, channel: PauliChannel, p_b: float, seed: int,
                    shots: int = 1) -> FrameRun:
    """Propagate randomly sampled spin errors into per-photon Pauli frames.

    No state vector is kept, so ``n_photons`` can be large (1e7 fits in a
    few hundred MB with one shot).  Output depends only on the arguments:
    a numpy ``default_rng(seed)`` stream drives all sampling.
    """
    if n_photons < 1 or shots < 1:
        raise ValueError("n_photons and shots must be >= 1")
    if not 0 <= p_b <= 1:
        raise ValueError("p_b must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    ex, ez = sample_cycle_errors(rng, shots, n_photons, channel, p_b)
    return frames_from_cycle_errors(ex, ez)


def frames_from_cycle_errors(ex, ez) -> FrameRun:
    """Localize per-cycle spin errors, given as (shots, cycles) x/z bits."""
    ex = np.atleast_2d(np.asarray(ex, dtype=bool))
    ez = np.atleast_2d(np.asarray(ez, dtype=bool))
    shots, n_photons = ex.shape
    # photon j (column j-1) takes the cycle j-1 error itself, plus a Z if the
    # cycle j-2 error had an X component
    x = np.zeros((shots, n_photons), dtype=bool)
    z = np.zeros((shots, n_photons), dtype=bool)
    x[:, 1:] = ex[:, :-1]
    z[:, 1:] = ez[:, :-1]
    z[:, 2:] ^= ex[:, :-2]
    spin_x = ex[:, -1].copy()
    spin_z = ez[:, -1].copy()
    if n_photons >= 2:
        spin_z ^= ex[:, -2]
    return FrameRun(x, z, spin_x, spin_z)


def expected_photon_rates(n_photons: int, channel: PauliChannel, p_b: float):
    """Exact (px, py, pz) per photon implied by the localization rules."""
    # one-cycle error distribution after multiplying channel and bad-emission Y
    px, py, pz = channel.p_x, channel.p_y, channel.p_z
    pi = 1 - px - py - pz
    qx = px * (1 - p_b) + pz * p_b
    qy = py * (1 - p_b) + pi * p_b
    qz = pz * (1 - p_b) + px * p_b
    p_xbit = qx + qy
    rows = []
    for j in range(1, n_photons + 1):
        if j == 1:
            rows.append((0.0, 0.0, 0.0))
            continue
        # own part from cycle j-1: X with qx, Y with qy, Z with qz
        own = {"I": 1 - qx - qy - qz, "X": qx, "Y": qy, "Z": qz}
        flip = p_xbit if j >= 3 else 0.0
        out = {"X": 0.0, "Y": 0.0, "Z": 0.0, "I": 0.0}
        for k, p in own.items():
            out[k] += p * (1 - flip)
            out[_compose_name("Z", k)] += p * flip
        rows.append((out["X"], out["Y"], out["Z"]))
    return np.array(rows)


def syndrome_bits(frame: PauliString, generators) -> tuple:
    """1 where the frame anticommutes with a generator."""
    return tuple(0 if frame.commutes_with(g) else 1 for g in generators)


def trajectory_syndromes(n_photons: int, channel: PauliChannel, p_b: float,
                         samples: int, seed: int):
    """Brute-force reference for :func:`pauli_frame_run`.

    Each trajectory simulates the state vector with physical Pauli
    insertions (channel errors after the rotation, bad-emission Y right
    after the emission) and reads the -1 eigenvalues of the target's
    stabilizer generators.  Returns an int array (samples, n_photons + 1).
    """
    if n_photons > 8:
        raise ValueError("trajectory reference limited to 8 photons")
    rng = np.random.default_rng(seed)
    gens = protocol.cluster_stabilizers(n_photons + 1)
    names = np.array(["I", "X", "Y", "Z"])
    cache = {}
    out = np.empty((samples, len(gens)), dtype=int)
    p = [1 - channel.p_any, channel.p_x, channel.p_y, channel.p_z]
    for i in range(samples):
        kinds = names[rng.choice(4, size=n_photons, p=p)]
        bad = rng.random(n_photons) < p_b
        key = (tuple(kinds), tuple(bad))
        if key not in cache:
            spin_err = {c: k for c, k in enumerate(kinds, start=1) if k != "I"}
            emit_err = {c: "Y" for c, b in enumerate(bad, start=1) if b}
            s = protocol.run_cycles(
                qsim.init_spin(1, 1), (protocol.HALF_PI,) * n_photons,
                spin_errors=spin_err, emission_errors=emit_err,
            )
            vals = [qsim.pauli_expectation(s, g) for g in gens]
            if any(abs(abs(v) - 1) > 1e-9 for v in vals):
                raise ArithmeticError("errored state is not a stabilizer eigenstate")
            cache[key] = [0 if v > 0 else 1 for v in vals]
        out[i] = cache[key]
    return out


def frame_syndromes(run: FrameRun, generators) -> np.ndarray:
    return np.array([syndrome_bits(run.frame(i), generators) for i in range(run.shots)])
