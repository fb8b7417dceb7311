"""Physical parameter model of the waveguide-coupled microresonator with a
chirally coupled two-level emitter and a backscattering point defect.

Conventions
-----------
All rates and frequencies are angular (rad/s).  Configuration files quote
laboratory values as ``value / 2 pi`` in Hz; :mod:`chiralring.config`
converts exactly once at ingestion.

The round-trip time and the free spectral range satisfy
``tau_rt * fsr = 1``, and the coupler bridge uses the exact exponential
form ``alpha = exp(-kappa_in * tau_rt)``, ``t = exp(-kappa_ex * tau_rt)``.
Its first-order expansion ``1 - kappa * tau_rt`` is available behind the
``first_order`` flag on the bridge functions.

The chirality rule: a backward-propagating photon drives the ring mode
that is decoupled from the emitter, so the backward direction is the same
system with the emitter coupling and its ring-decay rate set to zero.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s
TWO_PI = 2.0 * math.pi

# Relative tolerance for cross-checking redundant parameter pairs
# (emitter decay vs coupling, backscatter strength vs rate).
PAIR_CONSISTENCY_RTOL = 1e-6


class Direction(enum.Enum):
    """Propagation direction of the probe photon along the waveguide."""

    FORWARD = "forward"
    BACKWARD = "backward"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"direction must be 'forward' or 'backward', got {value!r}"
            ) from None


# ---------------------------------------------------------------------------
# Parameter bridges
# ---------------------------------------------------------------------------

def coupler_to_rates(t: float, alpha: float, fsr: float,
                     first_order: bool = False) -> tuple[float, float]:
    """Convert coupler coefficients to ring decay rates.

    Parameters
    ----------
    t : float
        Waveguide-ring transmission coefficient, 0 < t <= 1.
    alpha : float
        Round-trip amplitude attenuation, 0 < alpha <= 1.
    fsr : float
        Free spectral range (angular, rad/s).
    first_order : bool
        Use the first-order form ``kappa = (1 - x) * fsr`` instead of the
        exact ``-log(x) * fsr``.

    Returns
    -------
    (kappa_in, kappa_ex) : tuple of float
        Intrinsic and external decay rates (rad/s); kappa_in from alpha,
        kappa_ex from t.
    """
    if fsr <= 0.0:
        raise ValueError("fsr must be positive")
    if not 0.0 < t <= 1.0:
        raise ValueError(f"transmission coefficient t={t} outside (0, 1]")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"attenuation alpha={alpha} outside (0, 1]")
    if first_order:
        return (1.0 - alpha) * fsr, (1.0 - t) * fsr
    return -math.log(alpha) * fsr, -math.log(t) * fsr


def rates_to_coupler(kappa_in: float, kappa_ex: float, fsr: float,
                     first_order: bool = False) -> tuple[float, float]:
    """Inverse of :func:`coupler_to_rates`; returns ``(t, alpha)``."""
    if fsr <= 0.0:
        raise ValueError("fsr must be positive")
    if kappa_in < 0.0 or kappa_ex < 0.0:
        raise ValueError("decay rates must be non-negative")
    if first_order:
        t = 1.0 - kappa_ex / fsr
        alpha = 1.0 - kappa_in / fsr
        if t <= 0.0 or alpha <= 0.0:
            raise ValueError("rates too large for the first-order coupler form")
        return t, alpha
    return math.exp(-kappa_ex / fsr), math.exp(-kappa_in / fsr)


def emitter_coupling_rate(Gamma: float, fsr: float, kappa_tot: float) -> float:
    """Coherent emitter-ring coupling g from the emitter-into-ring decay Gamma.

    ``g = sqrt(Gamma * (2 * fsr - kappa_tot))``; valid only while
    ``2 * fsr > kappa_tot``.
    """
    if Gamma < 0.0:
        raise ValueError("Gamma must be non-negative")
    if 2.0 * fsr <= kappa_tot:
        raise ValueError(
            "2*fsr must exceed kappa_tot for the emitter bridge "
            f"(2*fsr={2 * fsr:.6g}, kappa_tot={kappa_tot:.6g})"
        )
    return math.sqrt(Gamma * (2.0 * fsr - kappa_tot))


def emitter_decay_rate(g: float, fsr: float, kappa_tot: float) -> float:
    """Inverse bridge: ``Gamma = g**2 / (2 * fsr - kappa_tot)``."""
    if g < 0.0:
        raise ValueError("g must be non-negative")
    if 2.0 * fsr <= kappa_tot:
        raise ValueError(
            "2*fsr must exceed kappa_tot for the emitter bridge "
            f"(2*fsr={2 * fsr:.6g}, kappa_tot={kappa_tot:.6g})"
        )
    return g * g / (2.0 * fsr - kappa_tot)


def backscatter_rate(epsilon: float, fsr: float) -> float:
    """Intermodal coupling rate h from the scatterer strength epsilon."""
    if epsilon < 0.0:
        raise ValueError("epsilon must be non-negative")
    if not epsilon < math.pi / 2.0:
        raise ValueError("epsilon must lie in [0, pi/2)")
    return epsilon * fsr


def backscatter_strength(h: float, fsr: float) -> float:
    """Inverse bridge: ``epsilon = h / fsr``."""
    if h < 0.0:
        raise ValueError("h must be non-negative")
    if fsr <= 0.0:
        raise ValueError("fsr must be positive")
    epsilon = h / fsr
    if not epsilon < math.pi / 2.0:
        raise ValueError("h/fsr exceeds the weak-scatterer range [0, pi/2)")
    return epsilon


def emitter_transmission(delta_qe, gamma: float, Gamma: float):
    """Single-pass transmission coefficient of the chirally coupled emitter.

    ``t_qe = (delta + i(gamma - Gamma)) / (delta + i(gamma + Gamma))``
    where ``delta`` is the probe detuning from the emitter transition.
    Accepts scalar or ndarray detuning; ``|t_qe| <= 1`` always.
    """
    if gamma < 0.0 or Gamma < 0.0:
        raise ValueError("emitter rates must be non-negative")
    delta_qe = np.asarray(delta_qe, dtype=float)
    den = delta_qe + 1j * (gamma + Gamma)
    if np.any(den == 0.0):
        raise ValueError(
            "singular emitter transmission: detuning and both rates are zero"
        )
    out = (delta_qe + 1j * (gamma - Gamma)) / den
    if out.ndim == 0:
        return complex(out)
    return out


def phase_amplitude_split(t_qe: complex) -> tuple[float, float]:
    """Decompose ``t_qe = exp(i*phase) * exp(-dissipation)``.

    Returns ``(phase, dissipation)`` with phase in (-pi, pi] and
    dissipation >= 0.  ``t_qe = 0`` means infinite attenuation and is
    rejected.
    """
    t_qe = complex(t_qe)
    magnitude = abs(t_qe)
    if magnitude == 0.0:
        raise ValueError("t_qe = 0 has infinite attenuation; no decomposition")
    imag = t_qe.imag
    if imag == 0.0:
        imag = 0.0  # drop a negative-zero sign so the branch cut lands at +pi
    return math.atan2(imag, t_qe.real), -math.log(magnitude)


def effective_resonance(resonance: float, phase_shift: float,
                        modal_number: int) -> float:
    """Ring resonance shifted by an extra per-round-trip phase.

    ``resonance * (1 - phase_shift / (2 pi m))``.  Warns when the shift
    drives the result to zero or below, which is outside the validity of
    the small-phase picture.
    """
    if modal_number < 1:
        raise ValueError("modal_number must be >= 1")
    shifted = resonance * (1.0 - phase_shift / (TWO_PI * modal_number))
    if shifted <= 0.0:
        warnings.warn(
            "effective resonance shifted to a non-positive frequency; "
            "the phase shift is outside the validity range",
            stacklevel=2,
        )
    return shifted


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingGeometry:
    """Ring dimensions and optical frequencies.

    The free spectral range is configuration data, not derived from the
    radius; the geometry enters only through the modal number.  Angular
    units throughout.
    """

    radius: float            # m
    n_eff: float             # effective refractive index
    fsr: float               # free spectral range, rad/s
    resonance: float         # ring resonance, rad/s
    modal_number: int

    def __post_init__(self):
        if self.radius <= 0.0 or self.n_eff <= 0.0:
            raise ValueError("radius and n_eff must be positive")
        if self.fsr <= 0.0 or self.resonance <= 0.0:
            raise ValueError("fsr and resonance must be positive")
        if self.modal_number < 1:
            raise ValueError("modal_number must be >= 1")
        exact = self.resonance * self.n_eff * self.radius / SPEED_OF_LIGHT
        if abs(self.modal_number - exact) >= 0.5:
            raise ValueError(
                f"modal_number {self.modal_number} inconsistent with the "
                f"geometry (resonance*n_eff*R/c = {exact:.3f})"
            )

    @classmethod
    def from_dimensions(cls, radius: float, n_eff: float, fsr: float,
                        resonance: float) -> "RingGeometry":
        """Build with the modal number rounded from the optical path length."""
        modal = round(resonance * n_eff * radius / SPEED_OF_LIGHT)
        return cls(radius, n_eff, fsr, resonance, int(modal))

    @property
    def round_trip_time(self) -> float:
        """Seconds per round trip; exactly 1/fsr."""
        return 1.0 / self.fsr

    def propagation_constant(self, omega: float) -> float:
        """beta = n_eff * omega / c (computed on demand, never stored)."""
        return self.n_eff * omega / SPEED_OF_LIGHT


@dataclass(frozen=True)
class RateSet:
    """Angular-frequency rates of the coupled system.

    Carries both representations of the emitter (decay ``Gamma`` vs
    coupling ``g``) and of the scatterer (strength ``epsilon`` vs rate
    ``h``); the bridges keep them consistent.
    """

    kappa_in: float          # intrinsic ring decay, rad/s
    kappa_ex: float          # waveguide coupling decay, rad/s
    gamma: float             # emitter dissipation, rad/s
    Gamma: float = 0.0       # emitter-into-ring decay, rad/s
    g: float = 0.0           # coherent emitter-ring coupling, rad/s
    h: float = 0.0           # backscatter coupling, rad/s
    epsilon: float = 0.0     # scatterer strength, dimensionless
    omega_qe: float = 0.0    # emitter transition frequency, rad/s

    def __post_init__(self):
        for name in ("kappa_in", "kappa_ex", "gamma", "Gamma", "g", "h",
                     "omega_qe"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        if not 0.0 <= self.epsilon < math.pi / 2.0:
            raise ValueError("epsilon must lie in [0, pi/2)")

    @property
    def kappa_tot(self) -> float:
        return self.kappa_in + self.kappa_ex


@dataclass(frozen=True)
class CouplerCoefficients:
    """Lossless waveguide-ring coupler plus the round-trip attenuation."""

    t: float                 # transmission coefficient
    kappa_c: float           # coupling coefficient, t^2 + kappa_c^2 = 1
    alpha: float             # round-trip amplitude attenuation

    def __post_init__(self):
        if not 0.0 < self.t < 1.0:
            raise ValueError("t must lie strictly inside (0, 1)")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if abs(self.t ** 2 + self.kappa_c ** 2 - 1.0) > 1e-12:
            raise ValueError("lossless coupler requires t^2 + kappa_c^2 = 1")

    @classmethod
    def from_transmission(cls, t: float, alpha: float) -> "CouplerCoefficients":
        return cls(t, math.sqrt(max(0.0, 1.0 - t * t)), alpha)


@dataclass(frozen=True)
class SystemConfig:
    """Complete physical description of one simulation setup."""

    geometry: RingGeometry
    rates: RateSet
    coupler: CouplerCoefficients
    alpha_in: float = 0.1
    direction: Direction = Direction.FORWARD
    sigma_z: float = -1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha_in <= 0.5:
            raise ValueError(
                "alpha_in must lie in [0, 0.5]; the solvers assume a weak probe"
            )
        if self.alpha_in > 0.2:
            warnings.warn(
                f"alpha_in = {self.alpha_in} is large for the weak-probe "
                "approximation",
                stacklevel=2,
            )
        if not -1.0 <= self.sigma_z <= 1.0:
            raise ValueError("sigma_z must lie in [-1, 1]")
        self._check_coupler_consistency()
        self._check_pair_consistency()

    def _check_coupler_consistency(self):
        fsr = self.geometry.fsr
        for label, coeff, kappa in (("t", self.coupler.t, self.rates.kappa_ex),
                                    ("alpha", self.coupler.alpha,
                                     self.rates.kappa_in)):
            x = kappa / fsr
            # first-order-supplied coefficients deviate from the exact
            # exponential by x^2/2, so allow a full x^2 window
            if abs(coeff - math.exp(-x)) > max(1e-12, x * x):
                raise ValueError(
                    f"coupler coefficient {label}={coeff} inconsistent with "
                    f"its decay rate (exp(-kappa/fsr) = {math.exp(-x):.12g})"
                )

    def _check_pair_consistency(self):
        fsr = self.geometry.fsr
        r = self.rates
        if r.Gamma > 0.0 or r.g > 0.0:
            lhs, rhs = r.g ** 2, r.Gamma * (2.0 * fsr - r.kappa_tot)
            if abs(lhs - rhs) > PAIR_CONSISTENCY_RTOL * max(lhs, rhs):
                raise ValueError(
                    f"emitter parameters inconsistent: g^2 = {lhs:.6e} but "
                    f"Gamma*(2*fsr - kappa_tot) = {rhs:.6e}"
                )
        if r.h > 0.0 or r.epsilon > 0.0:
            lhs, rhs = r.h, r.epsilon * fsr
            if abs(lhs - rhs) > PAIR_CONSISTENCY_RTOL * max(lhs, rhs):
                raise ValueError(
                    f"scatterer parameters inconsistent: h = {lhs:.6e} but "
                    f"epsilon*fsr = {rhs:.6e}"
                )

    @property
    def emitter_offset(self) -> float:
        """Ring resonance minus emitter transition frequency.

        ``omega_qe = 0`` means "unset": the emitter is taken resonant
        with the ring and the offset is zero.
        """
        if self.rates.omega_qe == 0.0:
            return 0.0
        return self.geometry.resonance - self.rates.omega_qe

    @classmethod
    def from_rates(cls, geometry: RingGeometry, rates: RateSet,
                   alpha_in: float = 0.1,
                   direction: Direction = Direction.FORWARD,
                   sigma_z: float = -1.0) -> "SystemConfig":
        """Build a config deriving the coupler from the rates (exact form)."""
        t, alpha = rates_to_coupler(rates.kappa_in, rates.kappa_ex,
                                    geometry.fsr)
        coupler = CouplerCoefficients.from_transmission(t, alpha)
        return cls(geometry, rates, coupler, alpha_in, direction, sigma_z)


def apply_direction(config: SystemConfig) -> SystemConfig:
    """Resolve the chirality rule into effective rates.

    Forward propagation returns the config unchanged.  Backward
    propagation drives the ring mode that is decoupled from the emitter,
    so the emitter coupling g and its ring decay Gamma are zeroed; all
    other parameters (kappas, h, epsilon) are untouched.  Idempotent.
    """
    if config.direction is Direction.FORWARD:
        return config
    if config.rates.g == 0.0 and config.rates.Gamma == 0.0:
        return config
    rates = dataclasses.replace(config.rates, g=0.0, Gamma=0.0)
    return dataclasses.replace(config, rates=rates)
