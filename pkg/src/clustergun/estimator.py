"""Repetition and N-photon coincidence rates.

The source fires once per pi/2 precession, so the repetition rate is
1 / T_cycle times an optional duty factor for overheads not modelled here.
An N-photon string is fully detected with probability eta**N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import PhysicalParams, cycle_time


@dataclass(frozen=True)
class RateEstimate:
    rep_rate: float
    n_photons: int
    efficiency: float
    coincidence_rate: float

    def as_dict(self):
        return {
            "rep_rate_hz": self.rep_rate,
            "coincidence_rate_hz": self.coincidence_rate,
            "eta": self.efficiency,
            "n": self.n_photons,
        }


def repetition_rate(p: PhysicalParams, duty: float = 1.0) -> float:
    if not 0 < duty <= 1:
        raise ValueError(f"duty factor must lie in (0, 1], got {duty}")
    return duty / cycle_time(p)


def coincidence_rate(p: PhysicalParams, eta: float, n: int, duty: float = 1.0) -> RateEstimate:
    if not 0 < eta <= 1:
        raise ValueError(f"efficiency must lie in (0, 1], got {eta}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rep = repetition_rate(p, duty)
    return RateEstimate(rep, n, eta, rep * eta ** n)


def required_efficiency(p: PhysicalParams, n: int, target_rate: float,
                        duty: float = 1.0) -> float:
    """Collection efficiency giving ``target_rate`` full n-photon detections per second."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if target_rate <= 0:
        raise ValueError("target rate must be > 0")
    rep = repetition_rate(p, duty)
    if target_rate > rep:
        raise ValueError(
            f"infeasible: target {target_rate:.3g} Hz exceeds repetition rate {rep:.3g} Hz"
        )
    return math.exp(math.log(target_rate / rep) / n)
