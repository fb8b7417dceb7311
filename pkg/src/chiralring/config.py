"""Configuration ingestion.

JSON schema (all rate-like keys are quoted as value/2pi in Hz and are
converted to angular rad/s exactly once here):

.. code-block:: json

    {
      "geometry": {"radius_m": 1.05e-5, "n_eff": 1.5,
                   "fsr_over_2pi_hz": 3e12,
                   "resonance_over_2pi_hz": 3e14},
      "rates": {"kappa_in_over_2pi_hz": 3e10,
                "kappa_ex_over_2pi_hz": 3e10,
                "gamma_over_2pi_hz": 6e6,
                "Gamma_over_2pi_hz": 6e8,        // or g_over_2pi_hz
                "h_over_2pi_hz": 3e10,           // or epsilon
                "omega_qe_over_2pi_hz": 3e14},
      "drive": {"alpha_in": 0.1},
      "direction": "forward",
      "sigma_z": -1,
      "sweep": {"min_over_kappa_tot": -10, "max_over_kappa_tot": 10,
                "points": 2001, "methods": ["tm", "spt"],
                "master_stride": 10}
    }

Of each alternative pair (Gamma | g, h | epsilon) either member may be
given and the parameter bridge fills the other; giving both is allowed
only when they already satisfy the bridge identity.
"""

from __future__ import annotations

import json

from .errors import ConfigError
from .model import (Direction, RateSet, RingGeometry, SystemConfig,
                    backscatter_rate, backscatter_strength,
                    emitter_coupling_rate, emitter_decay_rate,
                    PAIR_CONSISTENCY_RTOL, TWO_PI)
from .sweep import METHODS, SweepSpec

_GEOMETRY_KEYS = ("radius_m", "n_eff", "fsr_over_2pi_hz",
                  "resonance_over_2pi_hz")
_RATE_KEYS = ("kappa_in_over_2pi_hz", "kappa_ex_over_2pi_hz",
              "gamma_over_2pi_hz", "Gamma_over_2pi_hz", "g_over_2pi_hz",
              "h_over_2pi_hz", "epsilon", "omega_qe_over_2pi_hz")
_REQUIRED = ("rates.kappa_ex_over_2pi_hz", "rates.kappa_in_over_2pi_hz",
             "rates.gamma_over_2pi_hz", "geometry.radius_m",
             "geometry.n_eff", "geometry.fsr_over_2pi_hz",
             "geometry.resonance_over_2pi_hz")
_DRIVE_KEYS = ("alpha_in",)
_SWEEP_KEYS = ("min_over_kappa_tot", "max_over_kappa_tot", "points",
               "methods", "master_stride")
_TOP_KEYS = ("geometry", "rates", "drive", "direction", "sigma_z", "sweep")


def _require_mapping(node, path):
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected an object")
    return node

def _check_unknown(node: dict, allowed, path):
    unknown = [k for k in node if k not in allowed]
    if unknown:
        keys = ", ".join(f"{path}.{k}" if path else k for k in sorted(unknown))
        raise ConfigError(f"unknown key: {keys}")


def _number(node: dict, path: str, key: str, default=None):
    if key not in node:
        return default
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _angular(node: dict, path: str, key: str, default=None):
    value = _number(node, path, key, default)
    if value is None:
        return None
    return TWO_PI * value


def load_config(path) -> tuple[SystemConfig, SweepSpec, dict]:
    """Parse a configuration file.

    Returns ``(config, sweep_spec, echo)`` where ``echo`` is the raw
    parsed document, kept verbatim for output metadata.

    Raises
    ------
    ConfigError
        Unknown key, missing required key, non-numeric value or any
        physical-invariant violation, naming the offending key path.
    OSError
        If the file cannot be read.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    config, spec = parse_config(raw)
    return config, spec, raw


def parse_config(raw: dict) -> tuple[SystemConfig, SweepSpec]:
    """Validate a parsed document and build the domain objects."""
    raw = _require_mapping(raw, "<root>")
    _check_unknown(raw, _TOP_KEYS, "")
    geometry_node = _require_mapping(raw.get("geometry", {}), "geometry")
    rates_node = _require_mapping(raw.get("rates", {}), "rates")
    drive_node = _require_mapping(raw.get("drive", {}), "drive")
    sweep_node = _require_mapping(raw.get("sweep", {}), "sweep")
    _check_unknown(geometry_node, _GEOMETRY_KEYS, "geometry")
    _check_unknown(rates_node, _RATE_KEYS, "rates")
    _check_unknown(drive_node, _DRIVE_KEYS, "drive")
    _check_unknown(sweep_node, _SWEEP_KEYS, "sweep")

    missing = []
    for dotted in _REQUIRED:
        section, key = dotted.split(".")
        node = geometry_node if section == "geometry" else rates_node
        if key not in node:
            missing.append(dotted)
    if missing:
        raise ConfigError("missing required key(s): " + ", ".join(missing))

    try:
        geometry = RingGeometry.from_dimensions(
            radius=_number(geometry_node, "geometry", "radius_m"),
            n_eff=_number(geometry_node, "geometry", "n_eff"),
            fsr=_angular(geometry_node, "geometry", "fsr_over_2pi_hz"),
            resonance=_angular(geometry_node, "geometry",
                               "resonance_over_2pi_hz"),
        )
    except ValueError as exc:
        raise ConfigError(f"geometry: {exc}") from exc

    kappa_in = _angular(rates_node, "rates", "kappa_in_over_2pi_hz")
    kappa_ex = _angular(rates_node, "rates", "kappa_ex_over_2pi_hz")
    gamma = _angular(rates_node, "rates", "gamma_over_2pi_hz")
    kappa_tot = kappa_in + kappa_ex
    try:
        Gamma, g = _resolve_emitter_pair(rates_node, geometry.fsr, kappa_tot)
        h, epsilon = _resolve_scatterer_pair(rates_node, geometry.fsr)
        omega_qe = _angular(rates_node, "rates", "omega_qe_over_2pi_hz", 0.0)
        rates = RateSet(kappa_in=kappa_in, kappa_ex=kappa_ex, gamma=gamma,
                        Gamma=Gamma, g=g, h=h, epsilon=epsilon,
                        omega_qe=omega_qe)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"rates: {exc}") from exc

    alpha_in = _number(drive_node, "drive", "alpha_in", 0.1)
    direction_raw = raw.get("direction", "forward")
    try:
        direction = Direction.parse(direction_raw)
    except ValueError as exc:
        raise ConfigError(f"direction: {exc}") from exc
    sigma_z = _number(raw, "", "sigma_z", -1.0)

    try:
        config = SystemConfig.from_rates(geometry, rates, alpha_in=alpha_in,
                                         direction=direction, sigma_z=sigma_z)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    spec = _parse_sweep(sweep_node)
    return config, spec


def _resolve_emitter_pair(node, fsr, kappa_tot):
    Gamma = _angular(node, "rates", "Gamma_over_2pi_hz")
    g = _angular(node, "rates", "g_over_2pi_hz")
    if Gamma is None and g is None:
        return 0.0, 0.0
    if Gamma is None:
        return emitter_decay_rate(g, fsr, kappa_tot), g
    if g is None:
        return Gamma, emitter_coupling_rate(Gamma, fsr, kappa_tot)
    expected = Gamma * (2.0 * fsr - kappa_tot)
    if abs(g * g - expected) > PAIR_CONSISTENCY_RTOL * max(g * g, expected):
        raise ConfigError(
            "rates.Gamma_over_2pi_hz and rates.g_over_2pi_hz are both given "
            f"but inconsistent (g^2 = {g * g:.6e}, "
            f"Gamma*(2*fsr - kappa_tot) = {expected:.6e})"
        )
    return Gamma, g


def _resolve_scatterer_pair(node, fsr):
    h = _angular(node, "rates", "h_over_2pi_hz")
    epsilon = _number(node, "rates", "epsilon")
    if h is None and epsilon is None:
        return 0.0, 0.0
    if h is None:
        return backscatter_rate(epsilon, fsr), epsilon
    if epsilon is None:
        return h, backscatter_strength(h, fsr)
    expected = epsilon * fsr
    if abs(h - expected) > PAIR_CONSISTENCY_RTOL * max(h, expected):
        raise ConfigError(
            "rates.h_over_2pi_hz and rates.epsilon are both given but "
            f"inconsistent (h = {h:.6e}, epsilon*fsr = {expected:.6e})"
        )
    return h, epsilon


def _parse_sweep(node) -> SweepSpec:
    methods = node.get("methods", list(SweepSpec().methods))
    if not isinstance(methods, list) or not all(isinstance(m, str)
                                                for m in methods):
        raise ConfigError("sweep.methods: expected a list of method names")
    for m in methods:
        if m not in METHODS:
            raise ConfigError(
                f"sweep.methods: unknown method {m!r} "
                f"(expected a subset of {list(METHODS)})"
            )
    points = node.get("points", 2001)
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError("sweep.points: expected an integer")
    stride = node.get("master_stride", 10)
    if isinstance(stride, bool) or not isinstance(stride, int):
        raise ConfigError("sweep.master_stride: expected an integer")
    try:
        return SweepSpec(
            min_over_kappa_tot=_number(node, "sweep", "min_over_kappa_tot",
                                       -10.0),
            max_over_kappa_tot=_number(node, "sweep", "max_over_kappa_tot",
                                       10.0),
            points=points,
            methods=tuple(methods),
            master_stride=stride,
        )
    except ValueError as exc:
        raise ConfigError(f"sweep: {exc}") from exc


def config_to_dict(config: SystemConfig) -> dict:
    """Serialize a SystemConfig back to the file schema (over-2pi Hz)."""
    geometry = config.geometry
    rates = config.rates
    out = {
        "geometry": {
            "radius_m": geometry.radius,
            "n_eff": geometry.n_eff,
            "fsr_over_2pi_hz": geometry.fsr / TWO_PI,
            "resonance_over_2pi_hz": geometry.resonance / TWO_PI,
        },
        "rates": {
            "kappa_in_over_2pi_hz": rates.kappa_in / TWO_PI,
            "kappa_ex_over_2pi_hz": rates.kappa_ex / TWO_PI,
            "gamma_over_2pi_hz": rates.gamma / TWO_PI,
            "Gamma_over_2pi_hz": rates.Gamma / TWO_PI,
            "g_over_2pi_hz": rates.g / TWO_PI,
            "h_over_2pi_hz": rates.h / TWO_PI,
            "epsilon": rates.epsilon,
            "omega_qe_over_2pi_hz": rates.omega_qe / TWO_PI,
        },
        "drive": {"alpha_in": config.alpha_in},
        "direction": config.direction.value,
        "sigma_z": config.sigma_z,
    }
    return out
