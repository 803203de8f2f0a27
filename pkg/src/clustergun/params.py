"""Physical parameters of the quantum-dot source and their dimensionless form.

Everything downstream works in units of the trion linewidth (Gamma = 1,
hbar = 1).  Only three ratios survive:

    x = g_e * mu_B * B / (hbar * Gamma)    Zeeman splitting / linewidth
    y = 1 / (Gamma * T2)                    inverse coherence product
    d = gamma_d / Gamma                     exciton pure-dephasing ratio

``x`` is the *full* Zeeman splitting.  Pole offsets in the emitted
wavepackets sit at +-x/2 (see :mod:`clustergun.wavepacket`).  The heavy hole
g-factor is taken to be zero and the Lamb shift is absorbed into omega0,
which is therefore fixed at 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from scipy import constants

MU_B = constants.physical_constants["Bohr magneton"][0]  # J/T
HBAR = constants.hbar  # J s

#: Values used for keys missing from a config document.
DEFAULTS = {
    "gamma": 1e10,
    "b_field": 0.015,
    "g_e": 0.5,
    "t2": 1e-6,
    "gamma_d": 0.0,
}


class ConfigError(ValueError):
    """Malformed config document or physically invalid parameters."""


@dataclass(frozen=True)
class PhysicalParams:
    """SI-unit source parameters.

    gamma    trion decay rate, 1/s
    b_field  in-plane magnetic field, T
    g_e      electron g-factor
    t2       spin dephasing time, s
    gamma_d  exciton pure-dephasing rate, 1/s
    """

    gamma: float = DEFAULTS["gamma"]
    b_field: float = DEFAULTS["b_field"]
    g_e: float = DEFAULTS["g_e"]
    t2: float = DEFAULTS["t2"]
    gamma_d: float = DEFAULTS["gamma_d"]
    omega0: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v):
                raise ConfigError(f"{f.name} must be finite, got {v!r}")
        if self.gamma <= 0:
            raise ConfigError(f"gamma must be > 0, got {self.gamma}")
        if self.t2 <= 0:
            raise ConfigError(f"t2 must be > 0, got {self.t2}")
        if self.b_field < 0:
            raise ConfigError(f"b_field must be >= 0, got {self.b_field}")
        if self.gamma_d < 0:
            raise ConfigError(f"gamma_d must be >= 0, got {self.gamma_d}")
        if self.omega0 != 0.0:
            raise ConfigError("omega0 is fixed to 0 (Lamb shift absorbed)")

    @property
    def omega_b(self) -> float:
        """Spin precession angular frequency g_e mu_B B / hbar, rad/s."""
        return self.g_e * MU_B * self.b_field / HBAR


@dataclass(frozen=True)
class DimensionlessParams:
    x: float
    y: float
    d: float

    def __post_init__(self):
        for name in ("x", "y", "d"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be finite and >= 0, got {v!r}")


def parse_config(text: str) -> PhysicalParams:
    """Parse a ``key=value`` document into :class:`PhysicalParams`.

    Blank lines and ``#`` comments are ignored.  Keys are restricted to
    :data:`DEFAULTS`; missing ones take their default value.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep or not key or not val:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        if key not in DEFAULTS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(val)
        except ValueError:
            raise ConfigError(f"line {lineno}: {key} is not a number: {val!r}") from None
    return PhysicalParams(**{**DEFAULTS, **values})


def load_config(path) -> PhysicalParams:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def to_dimensionless(p: PhysicalParams) -> DimensionlessParams:
    return DimensionlessParams(
        x=p.omega_b / p.gamma,
        y=1.0 / (p.gamma * p.t2),
        d=p.gamma_d / p.gamma,
    )


def b_field_from_x(x: float, gamma: float, g_e: float) -> float:
    """Field (T) that gives Zeeman ratio ``x`` at the given linewidth and g-factor."""
    return x * HBAR * gamma / (g_e * MU_B)


def cycle_time(p: PhysicalParams) -> float:
    """Time for a pi/2 spin precession, pi / (2 omega_B), in seconds."""
    if p.b_field == 0 or p.g_e == 0:
        raise ConfigError("no precession, cycle time undefined (B = 0)")
    return math.pi / (2.0 * abs(p.omega_b))


def cycle_over_t2(p: PhysicalParams) -> float:
    return cycle_time(p) / p.t2


def cycle_over_t2_dimensionless(x: float, y: float) -> float:
    """T_cycle / T2 expressed through the dimensionless ratios: (pi/2) y / x."""
    if x <= 0:
        raise ConfigError("no precession, cycle time undefined (x = 0)")
    return 0.5 * math.pi * y / x
