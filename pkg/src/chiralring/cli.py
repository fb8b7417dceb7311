"""Command-line interface.

Subcommands:

* ``spectrum``  run one sweep and emit CSV or JSON
* ``compare``   run a multi-method sweep and report pairwise agreement
* ``chirality`` paired forward/backward sweep with the on-resonance contrast
* ``validate``  parse and check a configuration, print the derived parameters

Exit codes: 0 success, 1 validation error, 2 solver failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from .config import load_config
from .errors import ConfigError, SolverError
from .model import TWO_PI
from .sweep import METHODS, compare_report, emit, render_report, run_sweep


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors, which collides with the
    # solver-failure code; route them through the validation path instead
    def error(self, message):
        raise ConfigError(message)


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"--range expects min:max, got {text!r}")
    try:
        low, high = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"--range expects numbers, got {text!r}") from None
    return low, high


def _parse_methods(text: str) -> tuple:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    for m in methods:
        if m not in METHODS:
            raise ConfigError(f"unknown method {m!r} "
                              f"(expected a subset of {list(METHODS)})")
    if not methods:
        raise ConfigError("--methods needs at least one method")
    return methods


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chiralring",
                     description="Single-photon transmission of a chirally "
                                 "coupled emitter-microresonator system")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out=False):
        p.add_argument("--config", required=True, help="JSON configuration")
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--methods", default=None,
                       help="comma-separated subset of: " + ",".join(METHODS))
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--range", dest="sweep_range", default=None,
                       metavar="MIN:MAX", help="grid range in kappa_tot units")
        p.add_argument("--workers", type=int, default=1,
                       help="process pool size for master-equation points")

    p_spectrum = sub.add_parser("spectrum", help="run one sweep")
    add_common(p_spectrum)
    p_spectrum.add_argument("--direction", default=None,
                            choices=("forward", "backward", "both"))

    p_compare = sub.add_parser("compare", help="multi-method agreement report")
    add_common(p_compare)
    p_compare.add_argument("--direction", default=None,
                           choices=("forward", "backward"))

    p_chirality = sub.add_parser("chirality",
                                 help="forward/backward paired sweep")
    add_common(p_chirality)

    p_validate = sub.add_parser("validate", help="check a configuration")
    p_validate.add_argument("--config", required=True)
    return parser


def _build_spec(spec, args, directions=None):
    updates = {}
    if args.methods:
        updates["methods"] = _parse_methods(args.methods)
    if args.points is not None:
        updates["points"] = args.points
    if args.sweep_range is not None:
        low, high = _parse_range(args.sweep_range)
        updates["min_over_kappa_tot"] = low
        updates["max_over_kappa_tot"] = high
    if directions is not None:
        updates["directions"] = directions
    try:
        return dataclasses.replace(spec, **updates)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _out_path(base: str, direction: str, multiple: bool) -> str:
    if not multiple:
        return base
    stem, dot, extension = base.rpartition(".")
    if not dot:
        return f"{base}.{direction}"
    return f"{stem}.{direction}.{extension}"


def _emit_or_print(spectrum, args, direction, multiple):
    if args.out:
        emit(spectrum, args.format, _out_path(args.out, direction, multiple))
    else:
        import pathlib
        import tempfile
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / f"spectrum.{args.format}"
            emit(spectrum, args.format, path)
            sys.stdout.write(path.read_text(encoding="utf-8"))


def _center_transmission(spectrum):
    grid = spectrum.delta1_over_kappa_tot
    index = int(np.argmin(np.abs(grid)))
    out = {}
    for method in spectrum.methods:
        value = spectrum.transmission[method][index]
        if np.isfinite(value):
            out[method] = float(value)
    return float(grid[index]), out


def _cmd_spectrum(args) -> int:
    config, spec, echo = load_config(args.config)
    choice = args.direction or config.direction.value
    directions = (("forward", "backward") if choice == "both"
                  else (choice,))
    spec = _build_spec(spec, args, directions)
    spectra = run_sweep(config, spec, workers=args.workers, config_echo=echo)
    for direction, spectrum in zip(directions, spectra):
        _emit_or_print(spectrum, args, direction, len(directions) > 1)
    return 0


def _cmd_compare(args) -> int:
    config, spec, echo = load_config(args.config)
    directions = ((args.direction,) if args.direction
                  else (config.direction.value,))
    spec = _build_spec(spec, args, directions)
    if len(spec.methods) < 2:
        raise ConfigError("compare needs at least two methods "
                          "(use --methods)")
    spectrum = run_sweep(config, spec, workers=args.workers,
                         config_echo=echo)[0]
    report = compare_report(spectrum)
    print(render_report(report))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(report, handle, indent=1)
            handle.write("\n")
    return 0 if report["pass"] else 2


def _cmd_chirality(args) -> int:
    config, spec, echo = load_config(args.config)
    spec = _build_spec(spec, args, ("forward", "backward"))
    forward, backward = run_sweep(config, spec, workers=args.workers,
                                  config_echo=echo)
    print("chirality report (transmission at the grid point nearest "
          "delta1 = 0)")
    document = {"report": {}}
    for name, spectrum in (("forward", forward), ("backward", backward)):
        center, values = _center_transmission(spectrum)
        document["report"][name] = {"delta1_over_kappa_tot": center,
                                    "transmission": values}
        rendered = ", ".join(f"{m}: T = {v:.6g}" for m, v in values.items())
        print(f"  {name:8s} {rendered}")
        document[name] = {
            "delta1_over_kappa_tot": list(spectrum.delta1_over_kappa_tot),
            "transmission": {m: [None if not np.isfinite(v) else float(v)
                                 for v in vals]
                             for m, vals in spectrum.transmission.items()},
            "metadata": spectrum.metadata,
        }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=1)
            handle.write("\n")
    return 0


def _cmd_validate(args) -> int:
    config, spec, _ = load_config(args.config)
    rates = config.rates
    print(f"configuration OK: {args.config}")
    print(f"  kappa_in/2pi  = {rates.kappa_in / TWO_PI:.6g} Hz")
    print(f"  kappa_ex/2pi  = {rates.kappa_ex / TWO_PI:.6g} Hz")
    print(f"  kappa_tot/2pi = {rates.kappa_tot / TWO_PI:.6g} Hz")
    print(f"  gamma/2pi     = {rates.gamma / TWO_PI:.6g} Hz")
    print(f"  Gamma/2pi     = {rates.Gamma / TWO_PI:.6g} Hz")
    ratio = (f" (g/kappa_tot = {rates.g / rates.kappa_tot:.4g})"
             if rates.kappa_tot > 0.0 else "")
    print(f"  g/2pi         = {rates.g / TWO_PI:.6g} Hz{ratio}")
    print(f"  h/2pi         = {rates.h / TWO_PI:.6g} Hz "
          f"(epsilon = {rates.epsilon:.4g})")
    print(f"  coupler t = {config.coupler.t:.6f}, "
          f"alpha = {config.coupler.alpha:.6f}")
    print(f"  modal number m = {config.geometry.modal_number}")
    print(f"  direction = {config.direction.value}, "
          f"sigma_z = {config.sigma_z}, alpha_in = {config.alpha_in}")
    print(f"  sweep: [{spec.min_over_kappa_tot}, {spec.max_over_kappa_tot}] "
          f"kappa_tot, {spec.points} points, methods = "
          f"{', '.join(spec.methods)}")
    return 0


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "compare": _cmd_compare,
    "chirality": _cmd_chirality,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
