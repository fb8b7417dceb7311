import pathlib

import numpy as np
import pytest

import chiralring as cr

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"

# the eight parameter sets the spectra figures are built from
PARAMETER_SETS = (
    "bare_resonator",
    "backscatter_weak",
    "backscatter_strong",
    "emitter_weak",
    "emitter_intermediate",
    "emitter_strong",
    "combined_weak_backscatter",
    "combined_strong_backscatter",
)


def load_named(name):
    """(config, sweep_spec, echo) for one of the shipped parameter sets."""
    return cr.load_config(CONFIG_DIR / f"{name}.json")


@pytest.fixture(scope="session")
def bare_config():
    return load_named("bare_resonator")[0]


@pytest.fixture(scope="session")
def strong_emitter_config():
    return load_named("emitter_strong")[0]


def balanced_reference_config(g=0.8, h=0.3, gamma=0.4, alpha_in=0.2):
    """Synthetic order-unity-rate system for solver cross-validation.

    Small rates keep the Liouvillian well scaled for the RK4 oracle.
    """
    fsr = 50.0
    geometry = cr.RingGeometry.from_dimensions(
        radius=1.0, n_eff=1.5, fsr=fsr, resonance=4.0e8)
    kappa_tot = 1.0
    rates = cr.RateSet(
        kappa_in=0.5, kappa_ex=0.5, gamma=gamma,
        Gamma=cr.emitter_decay_rate(g, fsr, kappa_tot) if g else 0.0,
        g=g,
        h=h,
        epsilon=cr.backscatter_strength(h, fsr) if h else 0.0,
    )
    return cr.SystemConfig.from_rates(geometry, rates, alpha_in=alpha_in)


def rng(seed=0):
    return np.random.default_rng(seed)
