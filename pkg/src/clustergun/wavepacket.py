"""Spectral and temporal structure of the emitted photons.

Units: Gamma = 1, detuning kappa = (k - omega0) / Gamma, trion pole at
Z = -i/2.  With ``s = x / 2`` the half Zeeman splitting, the two partial
amplitudes are

    f1(kappa) = c / (kappa + s - Z),   f2(kappa) = c / (kappa - s - Z),
    c = 1 / sqrt(2 pi)

each of unit norm, and the good / bad mode functions are

    g = (f1 + f2) / 2 = c (kappa - Z) / ((kappa - Z)**2 - s**2)
    f = (f1 - f2) / 2 = -c s / ((kappa - Z)**2 - s**2).

With this scaling ||g||**2 + ||f||**2 = 1, so ||f||**2 is directly the
probability of a Y-errored emission.  ``f`` differs from the convention
with an explicit ``i`` by a fixed phase only; with the real prefactor the
overlap <g|f> is purely imaginary.

All probabilities are nevertheless reported as fractions of
||g||**2 + ||f||**2 so that truncated or coarse grids stay self-consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import integrate

Z_POLE = -0.5j
C_NORM = 1.0 / math.sqrt(2.0 * math.pi)

DEFAULT_POINTS = 20001
CONVERGENCE_RTOL = 1e-6
MAX_CENTRAL_SPACING = 0.01


class NonConvergenceError(RuntimeError):
    """A quadrature failed its own convergence check."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True, eq=False)
class DetuningGrid:
    """Quadrature nodes and weights for integrals over the real detuning axis.

    The default construction maps a uniform periodic grid in theta onto the
    whole real line through kappa = width * tan(theta).  Every integrand
    used here is a rational function of kappa decaying at least as
    1/kappa**2, which becomes a smooth periodic function of theta, so the
    plain trapezoid rule converges exponentially.  With 20001 nodes the
    central spacing is ~8e-5 and the outermost node sits near |kappa| = 6e3.
    """

    kappa: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.kappa, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if k.shape != w.shape or k.ndim != 1:
            raise ValueError("kappa and weights must be 1-d arrays of equal length")
        if np.any(np.diff(k) <= 0):
            raise ValueError("detuning grid must be strictly increasing")
        if not np.allclose(k, -k[::-1], rtol=0, atol=1e-12 * max(1.0, np.abs(k).max())):
            raise ValueError("detuning grid must be symmetric about 0")
        k.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "kappa", k)
        object.__setattr__(self, "weights", w)

    @classmethod
    def mapped(cls, n: int = DEFAULT_POINTS, width: float = 0.5) -> DetuningGrid:
        if n < 3:
            raise ValueError("need at least 3 nodes")
        # build the upper half and mirror it so the grid is exactly symmetric
        j = np.arange(n // 2) + (1.0 if n % 2 else 0.5)
        theta = j * math.pi / n
        k_pos = width * np.tan(theta)
        w_pos = (math.pi / n) * width / np.cos(theta) ** 2
        mid_k = [0.0] if n % 2 else []
        mid_w = [math.pi / n * width] if n % 2 else []
        kappa = np.concatenate([-k_pos[::-1], mid_k, k_pos])
        weights = np.concatenate([w_pos[::-1], mid_w, w_pos])
        return cls(kappa, weights)

    @classmethod
    def uniform(cls, span: float = 200.0, n: int = DEFAULT_POINTS) -> DetuningGrid:
        """Composite Simpson rule on [-span, span] (n odd).

        Truncates the 1/kappa**2 tails, so fractions computed on it carry a
        relative error of order 1/(pi span).
        """
        if n % 2 == 0 or n < 3:
            raise ValueError("Simpson grid needs an odd number of nodes >= 3")
        kappa = np.linspace(-span, span, n)
        h = kappa[1] - kappa[0]
        w = np.full(n, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        return cls(kappa, w * h / 3.0)

    def __len__(self):
        return self.kappa.size

    def central_spacing(self) -> float:
        """Largest node spacing inside the linewidth |kappa| <= 1."""
        inside = self.kappa[np.abs(self.kappa) <= 1.0]
        if inside.size < 2:
            return math.inf
        return float(np.diff(inside).max())

    def coarsened(self) -> DetuningGrid:
        """A grid of the same kind with roughly half the nodes."""
        n = len(self)
        half = max(3, (n // 2) | 1)
        if self._is_mapped():
            return DetuningGrid.mapped(half, self._width())
        span = float(self.kappa[-1])
        return DetuningGrid.uniform(span, (n + 1) // 2 | 1)

    def _is_mapped(self):
        h = np.diff(self.kappa)
        return not np.allclose(h, h[0])

    def _width(self):
        n = len(self)
        theta = 0.5 * math.pi - 0.5 * math.pi / n
        return float(self.kappa[-1] / math.tan(theta))

    def integrate(self, values) -> complex | float:
        return np.dot(self.weights, values)


@lru_cache(maxsize=4)
def default_grid(n: int = DEFAULT_POINTS) -> DetuningGrid:
    return DetuningGrid.mapped(n)


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    grid: DetuningGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != self.grid.kappa.shape:
            raise ValueError("values must match the grid")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectral amplitude is not finite on the grid")
        object.__setattr__(self, "values", v)

    def norm2(self) -> float:
        return float(self.grid.integrate(np.abs(self.values) ** 2))

    def inner(self, other: SpectralAmplitude) -> complex:
        """<self|other> = integral of conj(self) * other."""
        return complex(self.grid.integrate(np.conj(self.values) * other.values))

    def integral(self):
        return self.grid.integrate(self.values)


# --- closed forms ----------------------------------------------------------

def _check_x(x):
    if not (x >= 0 and math.isfinite(x)):
        raise ValueError(f"x must be finite and >= 0, got {x!r}")


def _denominator(kappa, x):
    return (np.asarray(kappa) - Z_POLE) ** 2 - (0.5 * x) ** 2


def g_closed(kappa, x):
    return C_NORM * (np.asarray(kappa) - Z_POLE) / _denominator(kappa, x)


def f_closed(kappa, x):
    return -C_NORM * (0.5 * x) / _denominator(kappa, x)


def f_main_text(kappa, x):
    """Bad amplitude in the convention carrying an explicit ``i``; equals -i f."""
    return 1j * C_NORM * (0.5 * x) / _denominator(kappa, x)


def f1_partial(kappa, x):
    return C_NORM / (np.asarray(kappa) + 0.5 * x - Z_POLE)


def f2_partial(kappa, x):
    return C_NORM / (np.asarray(kappa) - 0.5 * x - Z_POLE)


def amplitude_g(x: float, grid: DetuningGrid | None = None) -> SpectralAmplitude:
    _check_x(x)
    grid = grid or default_grid()
    return SpectralAmplitude(grid, g_closed(grid.kappa, x))


def amplitude_f(x: float, grid: DetuningGrid | None = None) -> SpectralAmplitude:
    _check_x(x)
    grid = grid or default_grid()
    return SpectralAmplitude(grid, f_closed(grid.kappa, x))


# --- norms, p_B and the unitary correction --------------------------------

class Norms(NamedTuple):
    norm_g2: float
    norm_f2: float
    overlap_gf: complex

    @property
    def total(self) -> float:
        return self.norm_g2 + self.norm_f2


def _norms_on(x, grid):
    g = g_closed(grid.kappa, x)
    f = f_closed(grid.kappa, x)
    return Norms(
        float(grid.integrate(np.abs(g) ** 2)),
        float(grid.integrate(np.abs(f) ** 2)),
        complex(grid.integrate(np.conj(g) * f)),
    )


def norms_overlap(x: float, grid: DetuningGrid | None = None, *, check: bool = True) -> Norms:
    """||g||**2, ||f||**2 and <g|f> by quadrature.

    With ``check`` the result is recomputed on a grid with half the nodes
    and :class:`NonConvergenceError` is raised if any quantity moved by more
    than 1e-6 relative.
    """
    _check_x(x)
    grid = grid or default_grid()
    if grid.central_spacing() > MAX_CENTRAL_SPACING:
        raise ValueError(
            f"grid does not resolve the linewidth "
            f"(spacing {grid.central_spacing():.3g} > {MAX_CENTRAL_SPACING})"
        )
    fine = _norms_on(x, grid)
    if check:
        coarse = _norms_on(x, grid.coarsened())
        scale = fine.total
        for a, b in zip(fine, coarse):
            if abs(a - b) > CONVERGENCE_RTOL * max(abs(a), 1e-9 * scale):
                raise NonConvergenceError(
                    f"quadrature not converged at x={x}: {a} vs {b}", estimate=fine
                )
    return fine


def p_bad(x: float) -> float:
    """Probability that an emission carries a Y error: x**2 / (2 x**2 + 2)."""
    _check_x(x)
    return x * x / (2.0 * x * x + 2.0)


def p_bad_quadrature(x: float, grid: DetuningGrid | None = None) -> float:
    n = norms_overlap(x, grid)
    return n.norm_f2 / n.total


def alpha(x: float, grid: DetuningGrid | None = None) -> complex:
    """Projection coefficient <g|f> / <g|g> of the bad mode on the good one."""
    n = norms_overlap(x, grid)
    return n.overlap_gf / n.norm_g2


def correction_angle(x: float, grid: DetuningGrid | None = None) -> float:
    """Spin rotation angle phi with tan(phi) = |alpha|."""
    return math.atan(abs(alpha(x, grid)))


def p_bad_corrected(x: float, grid: DetuningGrid | None = None) -> float:
    """Residual bad fraction ||f - alpha g||**2 / (||g||**2 + ||f||**2)."""
    if x == 0:
        return 0.0
    n = norms_overlap(x, grid)
    residual = n.norm_f2 - abs(n.overlap_gf) ** 2 / n.norm_g2
    return max(residual, 0.0) / n.total


def corrected_error(x: float, phi, grid: DetuningGrid | None = None):
    """Error fraction left after a corrective spin rotation by ``phi``.

    Writing f = alpha g + f_perp, the photon component in the good mode
    carries the spin operator (1 + alpha Y).  After rotating by ``phi`` its
    overlap with the ideal operator is ||g||**2 (cos phi + |alpha| sin phi)**2;
    everything else, including all of f_perp, counts as error.  The minimum sits at
    tan(phi) = |alpha| and equals :func:`p_bad_corrected`; phi = 0 gives
    :func:`p_bad`.
    """
    n = norms_overlap(x, grid)
    a = abs(n.overlap_gf) / n.norm_g2
    phi = np.asarray(phi, dtype=float)
    good = n.norm_g2 * (np.cos(phi) + a * np.sin(phi)) ** 2
    return 1.0 - good / n.total


# --- time-resolved amplitudes ---------------------------------------------

class TimeResolved(NamedTuple):
    up_R: complex      # <up, R_k | U(t) | trion up>
    down_R: complex    # <down, R_k | U(t) | trion up>
    up_L: complex      # <up, L_k | U(t) | trion down>
    down_L: complex    # <down, L_k | U(t) | trion down>


def time_resolved(x: float, t: float, kappa) -> TimeResolved:
    """Spin-photon amplitudes a time ``t`` (units 1/Gamma) after excitation.

    The spin precesses by angle x t over the interval, i.e. the amplitudes
    involve cos(s t), sin(s t) with s = x / 2.
    """
    _check_x(x)
    if t < 0:
        raise ValueError("t must be >= 0")
    g = g_closed(kappa, x)
    f = f_closed(kappa, x)
    c, sn = math.cos(0.5 * x * t), math.sin(0.5 * x * t)
    up_r = c * g - 1j * sn * f
    down_r = sn * g + 1j * c * f
    return TimeResolved(up_r, down_r, -down_r, up_r)


def good_bad_split(x: float, t: float, kappa, trion: str = "up"):
    """Split the emitted spin state into good and bad parts.

    Returns two arrays ``(good, bad)`` holding the (spin up, spin down)
    components of the photon amplitude for a given trion.  ``bad`` equals
    (f / g) * Y_spin ``good`` pointwise.
    """
    g = g_closed(kappa, x)
    f = f_closed(kappa, x)
    c, sn = math.cos(0.5 * x * t), math.sin(0.5 * x * t)
    if trion == "up":
        good = np.array([c * g, sn * g])
        bad = np.array([-1j * sn * f, 1j * c * f])
    elif trion == "down":
        good = np.array([-sn * g, c * g])
        bad = np.array([-1j * c * f, -1j * sn * f])
    else:
        raise ValueError(f"trion must be 'up' or 'down', got {trion!r}")
    return good, bad


# --- spectral filtering ----------------------------------------------------

class FilterResult(NamedTuple):
    error_rate: float
    heralded_loss: float


def _half_line(func, a, b):
    val, _ = integrate.quad(func, a, b, epsabs=1e-15, epsrel=1e-12, limit=400)
    return val


def filter_sweep(x: float, delta: float, mode: str = "reject_center") -> FilterResult:
    """Error rate and heralded loss after a spectral cut at |kappa| = delta.

    ``reject_center`` keeps photons with |kappa| > delta; ``accept_center``
    keeps |kappa| <= delta (as for photons headed to a fusion gate).  Both
    |g|**2 and |f|**2 are even in kappa, so only half lines are integrated.
    """
    _check_x(x)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if mode not in ("reject_center", "accept_center"):
        raise ValueError(f"unknown filter mode {mode!r}")

    def g2(k):
        return abs(g_closed(k, x)) ** 2

    def f2(k):
        return abs(f_closed(k, x)) ** 2

    total = 2 * (_half_line(g2, 0, np.inf) + _half_line(f2, 0, np.inf))
    if mode == "reject_center":
        kept_g = 2 * _half_line(g2, delta, np.inf)
        kept_f = 2 * _half_line(f2, delta, np.inf)
    else:
        kept_g = 2 * _half_line(g2, 0, delta)
        kept_f = 2 * _half_line(f2, 0, delta)
    kept = kept_g + kept_f
    if kept < 1e-12 * total:
        raise ValueError("empty filter: window keeps < 1e-12 of the emission")
    return FilterResult(kept_f / kept, max(0.0, 1.0 - kept / total))


# --- exciton pure dephasing -----------------------------------------------

def _dephased_closed(kappa, x, d, trig):
    """Closed form of the ordered double time integral.

    Expanding cos / sin into exponentials turns each ordered integral into
    a sum of rational terms; the term with the time order swapped is the
    complex conjugate, hence the factor 2 Re.
    """
    kappa = np.asarray(kappa, dtype=float)
    b = 0.5 * x
    a1 = 0.5 * (1.0 + d)
    a2 = 0.5 * (1.0 - d)
    acc = np.zeros(kappa.shape, dtype=complex)
    for s1 in (1, -1):
        for s2 in (1, -1):
            w = 0.25 if trig == "cos" else -0.25 * s1 * s2
            mu = -a2 + 1j * kappa + 1j * s2 * b
            nu = -a1 - 1j * kappa + 1j * s1 * b
            acc += w / mu * (1.0 / nu - 1.0 / (nu + mu))
    return (2.0 * acc.real) / (2.0 * math.pi)


def g2_dephased(kappa, x, d):
    return _dephased_closed(kappa, x, d, "cos")


def f2_dephased(kappa, x, d):
    return _dephased_closed(kappa, x, d, "sin")


def dephasing_tmax(d: float) -> float:
    rate = min(0.5 * (1.0 + d), 1.0)
    return 40.0 / rate


def dephased_direct(kappa: float, x: float, d: float, trig: str = "cos",
                    t_max: float | None = None):
    """Brute-force 2-d quadrature of the dephased spectral density.

    Returns ``(value, tail_bound)``; the time integrals are cut at
    ``t_max`` and ``tail_bound`` bounds what the cut discards.  Slow; used
    as the reference for :func:`g2_dephased` / :func:`f2_dephased`.
    """
    b = 0.5 * x
    a1 = 0.5 * (1.0 + d)
    a2 = 0.5 * (1.0 - d)
    t_max = t_max or dephasing_tmax(d)
    fn = np.cos if trig == "cos" else np.sin

    def integrand(t2, t1):
        env = math.exp(-a1 * t1 - a2 * t2) * fn(b * t1) * fn(b * t2)
        return env * math.cos(kappa * (t2 - t1))

    val, _ = integrate.dblquad(
        integrand, 0.0, t_max, 0.0, lambda t1: t1, epsabs=1e-11, epsrel=1e-10
    )
    if a2 >= 0:
        rate = a1
        tail = (t_max / rate + 1.0 / rate ** 2) * math.exp(-rate * t_max)
    else:
        tail = math.exp(-t_max) / abs(a2)
    return 2.0 * val / (2.0 * math.pi), tail / math.pi


class DephasedSpectrum(NamedTuple):
    g2_dephase: SpectralAmplitude
    f2_dephase: SpectralAmplitude


def dephased_spectrum(x: float, d: float, grid: DetuningGrid | None = None) -> DephasedSpectrum:
    _check_x(x)
    if not (d >= 0 and math.isfinite(d)):
        raise ValueError(f"d must be finite and >= 0, got {d!r}")
    grid = grid or default_grid()
    return DephasedSpectrum(
        SpectralAmplitude(grid, g2_dephased(grid.kappa, x, d)),
        SpectralAmplitude(grid, f2_dephased(grid.kappa, x, d)),
    )


def second_moment(density: SpectralAmplitude, window: float = 10.0) -> float:
    """Normalised second moment of a density restricted to |kappa| <= window."""
    k = density.grid.kappa
    w = density.grid.weights * (np.abs(k) <= window)
    v = np.real(density.values)
    return float(np.dot(w, v * k * k) / np.dot(w, v))
