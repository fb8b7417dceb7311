"""Transfer-matrix solver for the waveguide-coupled ring.

Four closed-form transmission cases, depending on whether the circulating
photon meets a backscatterer and/or the chirally coupled emitter.  The
emitter enters as a multiplicative phase-amplitude coefficient ``t_qe``
(see :func:`chiralring.model.emitter_transmission`).

The production path is the closed forms; :func:`transmission_matrix_path`
composes the explicit 4x4 coupling and propagation matrices with the
in-ring field relations and must agree with them, which the test suite
uses as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DENOMINATOR_FLOOR = 1e-15


@dataclass(frozen=True)
class ScattererCoefficients:
    """Lossless point scatterer: t_s = cos(eps), r_s = i sin(eps)."""

    epsilon: float
    t_s: complex
    r_s: complex

    def __post_init__(self):
        if not 0.0 <= self.epsilon < math.pi / 2.0:
            raise ValueError("epsilon must lie in [0, pi/2)")
        if abs(abs(self.t_s) ** 2 + abs(self.r_s) ** 2 - 1.0) > 1e-12:
            raise ValueError("lossless scatterer requires |t_s|^2 + |r_s|^2 = 1")

    @classmethod
    def from_strength(cls, epsilon: float) -> "ScattererCoefficients":
        return cls(epsilon, complex(math.cos(epsilon)),
                   1j * math.sin(epsilon))


def coupling_matrix(t: float) -> np.ndarray:
    """4x4 matrix mapping in-ring fields to the port fields at the coupler.

    Block form (1/kappa_c) * [[-1, t], [-t, 1]] for each propagation
    direction; t is the real transmission coefficient in [0, 1).
    """
    if not 0.0 <= t < 1.0:
        raise ValueError("singular coupler: t must lie in [0, 1)")
    kappa_c = math.sqrt(1.0 - t * t)
    block = np.array([[-1.0, t], [-t, 1.0]], dtype=complex) / kappa_c
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = block
    out[2:, 2:] = block
    return out


def propagation_matrix(theta1: float, theta2: float,
                       alpha1: float, alpha2: float) -> np.ndarray:
    """Diagonal arc-propagation matrix for the two ring segments.

    diag(1/alpha1 e^{-i theta1}, alpha2 e^{i theta2},
         1/alpha2 e^{-i theta2}, alpha1 e^{i theta1})
    """
    if not (0.0 < alpha1 <= 1.0 and 0.0 < alpha2 <= 1.0):
        raise ValueError("singular propagation: attenuations must lie in (0, 1]")
    return np.diag([
        np.exp(-1j * theta1) / alpha1,
        alpha2 * np.exp(1j * theta2),
        np.exp(-1j * theta2) / alpha2,
        alpha1 * np.exp(1j * theta1),
    ]).astype(complex)


def detuning_to_phase(delta1, round_trip_time: float):
    """Round-trip phase accumulated at detuning delta1 from resonance.

    theta = delta1 * tau_rt; the on-resonance phase is an exact multiple
    of 2 pi and drops out.  Sweeps should keep |theta| well below 1 for
    the closed forms to track the rate description.
    """
    return np.asarray(delta1, dtype=float) * round_trip_time


def _ratio(num, den):
    num = np.asarray(num)
    den = np.asarray(den)
    if np.any(np.abs(den) < DENOMINATOR_FLOOR):
        raise ValueError(
            "resonance singularity: transmission denominator vanished "
            "(lossless critically coupled ring on resonance)"
        )
    out = num / den
    if out.ndim == 0:
        return complex(out)
    return out


def transmission_bare(theta, t: float, alpha: float):
    """Ring with neither emitter nor scatterer."""
    phase = np.exp(1j * np.asarray(theta, dtype=float))
    return _ratio(-t + alpha * phase, -1.0 + alpha * t * phase)


def _scatterer_loop_factor(phase, t, alpha, scatterer):
    # single-pass factor of the counter-propagating loop closed by the
    # scatterer: (t_s - t* alpha e^{i theta}) / (1 - t_s t* alpha e^{i theta})
    loop = t * alpha * phase
    return (scatterer.t_s - loop) / (1.0 - scatterer.t_s * loop)


def transmission_scatterer(theta, t: float, alpha: float,
                           scatterer: ScattererCoefficients):
    """Ring with a backscatterer only; reduces to the bare case at eps = 0."""
    phase = np.exp(1j * np.asarray(theta, dtype=float))
    factor = _scatterer_loop_factor(phase, t, alpha, scatterer)
    return _ratio(-t + alpha * phase * factor,
                  -1.0 + alpha * t * phase * factor)


def transmission_emitter(theta, t: float, alpha: float, t_qe):
    """Ring with the chirally coupled emitter only (no scatterer)."""
    phase = np.exp(1j * np.asarray(theta, dtype=float))
    t_qe = np.asarray(t_qe, dtype=complex)
    return _ratio(-t + alpha * phase * t_qe,
                  -1.0 + alpha * t * phase * t_qe)


def transmission_full(theta, t: float, alpha: float,
                      scatterer: ScattererCoefficients, t_qe):
    """Ring with both the scatterer and the emitter.

    The circulating field is scattered first and then modulated by the
    emitter; reduces to the scatterer-only case at t_qe = 1 and to the
    emitter-only case at eps = 0.
    """
    phase = np.exp(1j * np.asarray(theta, dtype=float))
    t_qe = np.asarray(t_qe, dtype=complex)
    factor = _scatterer_loop_factor(phase, t, alpha, scatterer)
    return _ratio(-t + alpha * phase * t_qe * factor,
                  -1.0 + alpha * t * phase * t_qe * factor)


def transmission_matrix_path(t: float, theta1: float, theta2: float,
                             alpha1: float, alpha2: float,
                             scatterer: ScattererCoefficients,
                             t_qe: complex) -> complex:
    """Transmission from the explicit 4x4 matrix composition.

    Builds coupling @ propagation, closes the ring with the in-ring field
    relations (scatter, then modulate the co-propagating branch), imposes
    a single input port, and returns the output/input amplitude ratio.
    Scalar arguments only; serves as the oracle for the closed forms.
    """
    ts, rs = scatterer.t_s, scatterer.r_s
    # columns: the two independent in-ring fields just after the defect
    internal = np.array([
        [1.0, 0.0],
        [t_qe * ts, t_qe * rs],
        [0.0, 1.0],
        [rs, ts],
    ], dtype=complex)
    ports = coupling_matrix(t) @ propagation_matrix(
        theta1, theta2, alpha1, alpha2) @ internal
    # no input on the second port: ports[2] . x = 0
    x = np.array([ports[2, 1], -ports[2, 0]], dtype=complex)
    if np.linalg.norm(x) < DENOMINATOR_FLOOR:
        raise ValueError("degenerate port constraint in the matrix path")
    a0 = ports[0] @ x
    b0 = ports[1] @ x
    if abs(a0) < DENOMINATOR_FLOOR:
        raise ValueError("input amplitude vanished in the matrix path")
    return complex(b0 / a0)
