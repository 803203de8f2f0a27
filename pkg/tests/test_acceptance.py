"""Acceptance criteria, one test each.

Every test records its criterion number and a one-line detail; the
conftest hook prints a PASS/FAIL line per criterion after the run.
Run directly with ``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from clustergun import errormodel, estimator, protocol, qsim, wavepacket
from clustergun.errormodel import ErrorEvent, PauliChannel
from clustergun.params import PhysicalParams


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_ac01_cluster_amplitudes(record_property):
    record_property("criterion", 1)
    protocol.run_ideal(protocol.Schedule(2))      # warm caches before timing
    with Timer() as t:
        s = protocol.run_ideal(protocol.Schedule(2))
    expected = np.array([1, 1, 1, -1, 1, 1, -1, 1]) / math.sqrt(8)
    dev = float(np.max(np.abs(s.amplitudes - expected)))
    record_property("detail", f"max deviation {dev:.1e}, {t.elapsed * 1e3:.3f} ms")
    assert dev <= 1e-12
    assert t.elapsed < 1e-3


def test_ac02_stabilizers(record_property):
    record_property("criterion", 2)
    worst = 0.0
    with Timer() as t:
        for n in range(2, 11):
            target = protocol.target_cluster(n)
            for g in protocol.cluster_stabilizers(n):
                worst = max(worst, abs(qsim.pauli_expectation(target, g) - 1))
    record_property("detail", f"max |<g>-1| {worst:.1e} for n<=10, {t.elapsed:.2f} s")
    assert worst <= 1e-10
    assert t.elapsed < 10


def test_ac03_localization(record_property):
    record_property("criterion", 3)
    with Timer() as t:
        fids = [f for n in range(1, 7) for _, _, f in errormodel.localization_suite(n)]
        wrong = [
            errormodel.verify_localization(n, ErrorEvent(c, "Y"), rule=errormodel.localize_y_only)
            for n in range(2, 7) for c in range(1, n)
        ]
    worst = max(abs(1 - f) for f in fids)
    record_property(
        "detail",
        f"{len(fids)} checks, max |1-F| {worst:.1e}; wrong rule max F {max(wrong):.3f}, "
        f"{t.elapsed:.2f} s",
    )
    assert worst <= 1e-10
    assert max(wrong) < 0.99
    assert t.elapsed < 30


def test_ac04_p_bad_oracle(record_property):
    record_property("criterion", 4)
    with Timer() as t:
        rel = [
            abs(wavepacket.p_bad_quadrature(x) - x * x / (2 * x * x + 2)) / (x * x / (2 * x * x + 2))
            for x in (0.05, 0.15, 0.5, 1.0)
        ]
    record_property("detail", f"max relative deviation {max(rel):.1e}, {t.elapsed:.2f} s")
    assert max(rel) <= 1e-6
    assert t.elapsed < 5


def test_ac05_correction(record_property):
    record_property("criterion", 5)
    re_rel = max(
        abs(n.overlap_gf.real) / abs(n.overlap_gf)
        for n in (wavepacket.norms_overlap(x) for x in (0.05, 0.15, 0.5, 1.0))
    )
    xs = np.linspace(0.01, 2.0, 100)
    ordered = all(wavepacket.p_bad_corrected(x) <= wavepacket.p_bad(x) for x in xs)
    x = 0.15
    phi = np.linspace(0.0, 0.5, 50001)
    step = phi[1] - phi[0]
    best = phi[np.argmin(wavepacket.corrected_error(x, phi))]
    miss = abs(best - wavepacket.correction_angle(x))
    record_property(
        "detail",
        f"max |Re a|/|a| {re_rel:.1e}; corrected<=bare on 100 x: {ordered}; "
        f"phi argmin off by {miss:.1e} (step {step:.0e})",
    )
    assert re_rel <= 1e-8
    assert ordered
    assert miss <= step


def test_ac06_headline_error(record_property):
    record_property("criterion", 6)
    with Timer() as t:
        xs = np.geomspace(0.01, 0.5, 2000)
        vals = np.array([errormodel.total_error(x, 1e-4, corrected=True) for x in xs])
        k = int(np.argmin(vals))
    record_property(
        "detail",
        f"min total error {vals[k]:.5f} at x={xs[k]:.4f} (needs <=0.002, x in [0.03, 0.15]), "
        f"{t.elapsed:.2f} s",
    )
    assert vals[k] <= 0.002
    assert 0.03 <= xs[k] <= 0.15
    assert t.elapsed < 10


def test_ac07_dephasing_norm(record_property):
    record_property("criterion", 7)
    x = 0.15
    grid = wavepacket.default_grid()
    with Timer() as t:
        ref = wavepacket.norms_overlap(x).norm_g2
        rel = [
            abs(wavepacket.dephased_spectrum(x, d).g2_dephase.integral().real - ref) / ref
            for d in (0.0, 0.5, 1.0)
        ]
        pointwise = float(np.max(np.abs(
            wavepacket.g2_dephased(grid.kappa, x, 0.0) - np.abs(wavepacket.g_closed(grid.kappa, x)) ** 2
        )))
    record_property(
        "detail",
        f"max relative norm change {max(rel):.1e}; d=0 pointwise {pointwise:.1e}, {t.elapsed:.2f} s",
    )
    assert max(rel) <= 1e-4
    assert pointwise <= 1e-6
    assert t.elapsed < 60


def test_ac08_filtering(record_property):
    record_property("criterion", 8)
    x = 0.15
    rates = np.array([wavepacket.filter_sweep(x, d).error_rate for d in np.linspace(0, 5, 50)])
    rise = float(np.max(np.diff(rates)))
    off = abs(rates[0] - wavepacket.p_bad(x))
    record_property("detail", f"largest step {rise:.1e} (must be <=0); |e(0)-p_B| {off:.1e}")
    assert rise <= 0
    assert off <= 1e-6


def test_ac09_rates(record_property):
    record_property("criterion", 9)
    p = PhysicalParams()
    est = estimator.coincidence_rate(p, 0.18, 12)
    factor = max(est.coincidence_rate / 0.1, 0.1 / est.coincidence_rate)
    eta = estimator.required_efficiency(p, 12, 0.1)
    back = estimator.coincidence_rate(p, eta, 12).coincidence_rate
    rt = abs(back - 0.1) / 0.1
    record_property(
        "detail",
        f"rate {est.coincidence_rate:.3f} Hz (factor {factor:.2f} from 0.1 Hz); "
        f"round-trip {rt:.1e}",
    )
    assert factor <= 10
    assert rt <= 1e-10


def test_ac10_frames_vs_trajectories(record_property):
    record_property("criterion", 10)
    n, samples = 4, 10_000
    ch = PauliChannel(0.02, 0.05, 0.03)
    p_b = 0.04
    gens = protocol.cluster_stabilizers(n + 1)
    with Timer() as t:
        brute = errormodel.trajectory_syndromes(n, ch, p_b, samples, seed=11)
        run = errormodel.pauli_frame_run(n, ch, p_b, seed=12, shots=samples)
        frames = errormodel.frame_syndromes(run, gens)
    # single-generator marginals and the full joint syndrome distribution
    stats = []
    for col in range(len(gens)):
        stats.append((brute[:, col].mean(), frames[:, col].mean()))
    weights = 1 << np.arange(len(gens))
    jb = np.bincount(brute @ weights, minlength=2 ** len(gens)) / samples
    jf = np.bincount(frames @ weights, minlength=2 ** len(gens)) / samples
    stats += list(zip(jb, jf))
    worst = 0.0
    for a, b in stats:
        p = 0.5 * (a + b)
        sigma = math.sqrt(max(p * (1 - p), 1 / samples) * 2 / samples)
        worst = max(worst, abs(a - b) / sigma)
    record_property(
        "detail",
        f"{len(stats)} marginal/joint frequencies, worst {worst:.2f} sigma, {t.elapsed:.2f} s",
    )
    assert worst <= 5
    assert t.elapsed < 60


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
