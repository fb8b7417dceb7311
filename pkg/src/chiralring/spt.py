"""Closed-form single-photon-transport transmission.

The reference solution the other two methods are checked against.
"""

from __future__ import annotations

import numpy as np


def transmission_amplitude(delta1, delta2, kappa_in: float, kappa_ex: float,
                           gamma: float, g: float, h: float):
    """Port-to-port transmission amplitude of a single photon.

    Parameters are angular rates; ``delta1``/``delta2`` are the probe
    detunings from the ring resonance and the emitter transition and may
    be ndarrays.
    """
    for name, value in (("kappa_in", kappa_in), ("kappa_ex", kappa_ex),
                        ("gamma", gamma), ("g", g), ("h", h)):
        if value < 0.0:
            raise ValueError(f"{name} must be non-negative")
    delta1 = np.asarray(delta1, dtype=float)
    delta2 = np.asarray(delta2, dtype=float)
    d1 = delta1 + 1j * (kappa_in + kappa_ex)
    d2 = delta2 + 1j * gamma
    num = d1 * ((delta1 + 1j * (kappa_in - kappa_ex)) * d2 - g * g) - d2 * h * h
    den = d1 * (d1 * d2 - g * g) - d2 * h * h
    if np.any(den == 0.0):
        raise ValueError(
            "singular transmission: undamped system driven on a resonance"
        )
    out = num / den
    if out.ndim == 0:
        return complex(out)
    return out


def transmission(delta1, delta2, kappa_in: float, kappa_ex: float,
                 gamma: float, g: float, h: float):
    """Transmission probability |t_omega|^2."""
    amp = transmission_amplitude(delta1, delta2, kappa_in, kappa_ex,
                                 gamma, g, h)
    return np.abs(amp) ** 2
