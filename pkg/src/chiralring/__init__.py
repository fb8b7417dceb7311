"""Single-photon transmission of a whispering-gallery microresonator
chirally coupled to a two-level emitter, solved three independent ways.

* :mod:`chiralring.tm`    transfer matrices (emitter as a phase-amplitude
  modulator)
* :mod:`chiralring.spt`   closed-form single-photon transport
* :mod:`chiralring.cqed`  semiclassical coupled modes and the full
  Lindblad master equation

:mod:`chiralring.model` holds the parameter types and the exact bridges
that make the three agree; :mod:`chiralring.sweep` runs them on a common
detuning grid.
"""

from .model import (CouplerCoefficients, Direction, RateSet, RingGeometry,
                    SystemConfig, apply_direction, backscatter_rate,
                    backscatter_strength, coupler_to_rates,
                    effective_resonance, emitter_coupling_rate,
                    emitter_decay_rate, emitter_transmission,
                    phase_amplitude_split, rates_to_coupler)
from .cqed import (HilbertSpace, MasterSweep, SteadyStateResult,
                   build_hamiltonian, build_liouvillian, master_steady_state,
                   semiclassical_amplitude, semiclassical_fixed_point,
                   semiclassical_transmission, steady_state)
from .config import config_to_dict, load_config, parse_config
from .errors import (ConfigError, ConvergenceError, DegenerateNullSpaceError,
                     ResourceLimitError, SolverError)
from .sweep import (METHODS, Spectrum, SweepSpec, compare_report, emit,
                    load_spectrum, local_minima, render_report, run_sweep)

__version__ = "0.1.0"

__all__ = [
    "CouplerCoefficients", "Direction", "RateSet", "RingGeometry",
    "SystemConfig", "apply_direction", "backscatter_rate",
    "backscatter_strength", "coupler_to_rates", "effective_resonance",
    "emitter_coupling_rate", "emitter_decay_rate", "emitter_transmission",
    "phase_amplitude_split", "rates_to_coupler",
    "HilbertSpace", "MasterSweep", "SteadyStateResult", "build_hamiltonian",
    "build_liouvillian", "master_steady_state", "semiclassical_amplitude",
    "semiclassical_fixed_point", "semiclassical_transmission", "steady_state",
    "config_to_dict", "load_config", "parse_config",
    "ConfigError", "ConvergenceError", "DegenerateNullSpaceError",
    "ResourceLimitError", "SolverError",
    "METHODS", "Spectrum", "SweepSpec", "compare_report", "emit",
    "load_spectrum", "local_minima", "render_report", "run_sweep",
    "__version__",
]
