"""Detuning-sweep orchestration across the three solver families.

A sweep evaluates a subset of the methods

* ``tm``                  transfer matrix (closed forms),
* ``spt``                 single-photon transport,
* ``cqed-semiclassical``  coupled-mode steady state,
* ``cqed-master``         Lindblad master equation (strided),

on a common detuning grid quoted in units of kappa_tot, and packs the
results into a :class:`Spectrum` that can be compared across methods and
emitted as CSV (one table) or JSON (full round-trippable record).
"""

from __future__ import annotations

import dataclasses
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import cqed, spt, tm
from .errors import SolverError
from .model import Direction, SystemConfig, apply_direction, emitter_transmission

METHOD_TM = "tm"
METHOD_SPT = "spt"
METHOD_SEMICLASSICAL = "cqed-semiclassical"
METHOD_MASTER = "cqed-master"
METHODS = (METHOD_TM, METHOD_SPT, METHOD_SEMICLASSICAL, METHOD_MASTER)

# first-order phase regime guard for the transfer-matrix mapping
PHASE_GUARD_KAPPA_MULTIPLE = 1e3

DEFAULT_TOLERANCES = {
    frozenset((METHOD_SPT, METHOD_SEMICLASSICAL)): 1e-12,
    frozenset((METHOD_TM, METHOD_SPT)): 1e-2,
    frozenset((METHOD_TM, METHOD_SEMICLASSICAL)): 1e-2,
    frozenset((METHOD_MASTER, METHOD_SEMICLASSICAL)): 1e-2,
    frozenset((METHOD_MASTER, METHOD_SPT)): 1e-2,
    frozenset((METHOD_TM, METHOD_MASTER)): 2e-2,
}


@dataclass(frozen=True)
class SweepSpec:
    """Grid, method and direction selection for one sweep."""

    min_over_kappa_tot: float = -10.0
    max_over_kappa_tot: float = 10.0
    points: int = 2001
    methods: tuple = (METHOD_TM, METHOD_SPT, METHOD_SEMICLASSICAL)
    master_stride: int = 10
    directions: tuple = (Direction.FORWARD.value,)

    def __post_init__(self):
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if not self.min_over_kappa_tot < self.max_over_kappa_tot:
            raise ValueError("sweep range must satisfy min < max")
        if not self.methods:
            raise ValueError("select at least one method")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        if self.master_stride < 1:
            raise ValueError("master_stride must be >= 1")
        if not self.directions:
            raise ValueError("select at least one direction")
        for d in self.directions:
            Direction.parse(d)


@dataclass
class Spectrum:
    """Transmission versus detuning for one direction.

    ``transmission`` maps method name to an array aligned with the grid;
    grid points the master solver skipped hold NaN.
    """

    delta1_over_kappa_tot: np.ndarray
    transmission: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        grid = np.asarray(self.delta1_over_kappa_tot, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ValueError("grid must be a 1-D array with >= 2 points")
        if not np.all(np.diff(grid) > 0.0):
            raise ValueError("grid must be strictly increasing")
        self.delta1_over_kappa_tot = grid
        for method, values in self.transmission.items():
            values = np.asarray(values, dtype=float)
            if values.shape != grid.shape:
                raise ValueError(f"{method}: transmission length mismatch")
            finite = values[np.isfinite(values)]
            if finite.size and (finite.min() < 0.0 or
                                finite.max() > 1.0 + 1e-9):
                raise ValueError(
                    f"{method}: transmission outside [0, 1] "
                    f"(range {finite.min():.3e}..{finite.max():.3e})"
                )
            self.transmission[method] = values

    @property
    def methods(self) -> list:
        """Present methods in canonical column order."""
        return [m for m in METHODS if m in self.transmission]


def _master_points(solver: cqed.MasterSweep, deltas: np.ndarray) -> list:
    return [solver.solve(float(d)) for d in deltas]


def _master_chunk(args) -> list:
    config, space_args, cap, deltas = args
    solver = cqed.MasterSweep(config, cqed.HilbertSpace(*space_args), cap)
    return _master_points(solver, deltas)


def run_sweep(config: SystemConfig, spec: SweepSpec,
              space: cqed.HilbertSpace | None = None,
              liouvillian_cap: int = cqed.DEFAULT_LIOUVILLIAN_CAP,
              workers: int = 1, config_echo: dict | None = None) -> list:
    """Evaluate the selected methods over the grid.

    Returns one :class:`Spectrum` per requested direction, in the order
    given by ``spec.directions``.  ``workers > 1`` distributes the
    master-equation grid points over a process pool; the assembled
    output is identical to the serial one.
    """
    if config_echo is None:
        from .config import config_to_dict
        config_echo = config_to_dict(config)
    space = space if space is not None else cqed.HilbertSpace()
    kappa_tot = config.rates.kappa_tot
    if kappa_tot <= 0.0:
        raise ValueError("sweep needs kappa_tot > 0 to set the grid scale")
    grid = np.linspace(spec.min_over_kappa_tot, spec.max_over_kappa_tot,
                       spec.points)
    deltas = grid * kappa_tot
    sweep_warnings = []
    if np.max(np.abs(grid)) > PHASE_GUARD_KAPPA_MULTIPLE:
        message = ("sweep range exceeds the first-order phase regime "
                   f"(|delta1| > {PHASE_GUARD_KAPPA_MULTIPLE:g} kappa_tot); "
                   "transfer-matrix results degrade")
        warnings.warn(message, stacklevel=2)
        sweep_warnings.append(message)

    spectra = []
    for direction_name in spec.directions:
        directed = dataclasses.replace(
            config, direction=Direction.parse(direction_name))
        effective = apply_direction(directed)
        transmission = {}
        for method in spec.methods:
            if method == METHOD_MASTER:
                continue
            transmission[method] = _closed_form(method, effective, deltas)
        metadata = {
            "config": config_echo,
            "direction": direction_name,
            "kappa_tot_rad_per_s": kappa_tot,
            "methods": list(spec.methods),
            "points": spec.points,
            "warnings": list(sweep_warnings),
        }
        if METHOD_MASTER in spec.methods:
            values, certificates = _run_master(
                directed, space, liouvillian_cap, deltas,
                spec.master_stride, workers)
            transmission[METHOD_MASTER] = values
            metadata["master_stride"] = spec.master_stride
            metadata["truncation"] = {"n_max_a": space.n_max_a,
                                      "n_max_b": space.n_max_b}
            metadata["solver"] = certificates
        spectra.append(Spectrum(grid.copy(), transmission, metadata))
    return spectra


def _closed_form(method: str, config: SystemConfig,
                 deltas: np.ndarray) -> np.ndarray:
    rates = config.rates
    delta2 = deltas + config.emitter_offset
    try:
        if method == METHOD_SPT:
            return spt.transmission(deltas, delta2, rates.kappa_in,
                                    rates.kappa_ex, rates.gamma, rates.g,
                                    rates.h)
        if method == METHOD_SEMICLASSICAL:
            amp = cqed.semiclassical_transmission(config, deltas, delta2)
            return np.abs(amp) ** 2
        if method == METHOD_TM:
            theta = tm.detuning_to_phase(deltas,
                                         config.geometry.round_trip_time)
            t_qe = emitter_transmission(delta2, rates.gamma, rates.Gamma)
            scatterer = tm.ScattererCoefficients.from_strength(rates.epsilon)
            amp = tm.transmission_full(theta, config.coupler.t,
                                       config.coupler.alpha, scatterer, t_qe)
            return np.abs(amp) ** 2
    except ValueError as exc:
        raise SolverError(f"{method}: {exc}") from exc
    raise ValueError(f"unknown method {method!r}")


def _run_master(config, space, cap, deltas, stride, workers):
    indices = np.arange(0, deltas.size, stride)
    selected = deltas[indices]
    if workers > 1:
        chunks = np.array_split(selected, workers)
        args = [(config, (space.n_max_a, space.n_max_b), cap, chunk)
                for chunk in chunks if chunk.size]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_master_chunk, args)
                       for r in part]
    else:
        solver = cqed.MasterSweep(config, space, cap)
        results = _master_points(solver, selected)
    values = np.full(deltas.shape, np.nan)
    for index, result in zip(indices, results):
        values[index] = result.transmission
    certificates = {
        "steady_state_method": "null-space",
        "points_solved": int(indices.size),
        "residual_rel_max": max(r.residual for r in results),
        "trace_deviation_max": max(r.trace_deviation for r in results),
        "hermiticity_deviation_max": max(r.hermiticity_deviation
                                         for r in results),
        "min_eigenvalue": min(r.min_eigenvalue for r in results),
        "top_population_a_max": max(r.top_population_a for r in results),
        "top_population_b_max": max(r.top_population_b for r in results),
    }
    return values, certificates


# ---------------------------------------------------------------------------
# Analysis and emission
# ---------------------------------------------------------------------------

def local_minima(grid: np.ndarray, values: np.ndarray) -> list:
    """Strict interior local minima as (grid value, minimum) pairs.

    NaN entries (master-solver gaps) are skipped by compacting the grid
    first.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = np.isfinite(values)
    grid, values = grid[keep], values[keep]
    if values.size < 3:
        return []
    interior = (values[1:-1] < values[:-2]) & (values[1:-1] < values[2:])
    return [(float(grid[i + 1]), float(values[i + 1]))
            for i in np.nonzero(interior)[0]]


def compare_report(*spectra: Spectrum, tolerances: dict | None = None) -> dict:
    """Pairwise agreement report across the methods of one or more spectra.

    All spectra must share an identical grid.  For every method pair the
    maximum and mean absolute transmission difference is evaluated over
    the points both methods cover, and checked against the configured
    tolerance when one exists.
    """
    if not spectra:
        raise ValueError("compare_report needs at least one spectrum")
    grid = spectra[0].delta1_over_kappa_tot
    merged: dict = {}
    for spectrum in spectra:
        if not np.array_equal(spectrum.delta1_over_kappa_tot, grid):
            raise ValueError("grid mismatch between spectra")
        for method, values in spectrum.transmission.items():
            if method in merged and not np.array_equal(
                    merged[method], values, equal_nan=True):
                raise ValueError(f"conflicting data for method {method!r}")
            merged[method] = values
    methods = [m for m in METHODS if m in merged]
    if len(methods) < 2:
        raise ValueError("compare_report needs at least two methods")
    table = dict(DEFAULT_TOLERANCES)
    if tolerances:
        table.update({frozenset(k): v for k, v in tolerances.items()})

    pairs = {}
    overall = True
    for i, first in enumerate(methods):
        for second in methods[i + 1:]:
            both = np.isfinite(merged[first]) & np.isfinite(merged[second])
            diff = np.abs(merged[first][both] - merged[second][both])
            entry = {
                "max_abs_diff": float(diff.max()) if diff.size else 0.0,
                "mean_abs_diff": float(diff.mean()) if diff.size else 0.0,
                "points_compared": int(both.sum()),
            }
            tolerance = table.get(frozenset((first, second)))
            if tolerance is not None:
                entry["tolerance"] = tolerance
                entry["pass"] = bool(entry["max_abs_diff"] < tolerance)
                overall = overall and entry["pass"]
            pairs[f"{first} vs {second}"] = entry
    dips = {
        method: [{"delta1_over_kappa_tot": x, "transmission": t}
                 for x, t in local_minima(grid, merged[method])]
        for method in methods
    }
    return {
        "grid_points": int(grid.size),
        "methods": methods,
        "pairs": pairs,
        "dips": dips,
        "pass": overall,
    }


def render_report(report: dict) -> str:
    """Human-readable rendering of a compare report."""
    lines = [f"methods: {', '.join(report['methods'])} "
             f"({report['grid_points']} grid points)"]
    for name, entry in report["pairs"].items():
        line = (f"{name}: max|dT| = {entry['max_abs_diff']:.3e}, "
                f"mean = {entry['mean_abs_diff']:.3e} "
                f"({entry['points_compared']} pts)")
        if "tolerance" in entry:
            verdict = "PASS" if entry["pass"] else "FAIL"
            line += f", tol = {entry['tolerance']:.1e} -> {verdict}"
        lines.append(line)
    for method, dips in report["dips"].items():
        if dips:
            locations = ", ".join(
                f"{d['delta1_over_kappa_tot']:+.4g} (T={d['transmission']:.4g})"
                for d in dips)
            lines.append(f"{method} dips: {locations}")
    lines.append("overall: " + ("PASS" if report["pass"] else "FAIL"))
    return "\n".join(lines)


def _format_value(value: float) -> str:
    if not np.isfinite(value):
        return ""
    return f"{value:.12g}"


def emit(spectrum: Spectrum, fmt: str, path) -> None:
    """Write a spectrum to ``path`` as ``csv`` or ``json``."""
    if fmt == "csv":
        columns = spectrum.methods
        header = ",".join(["delta1_over_kappa_tot"]
                          + ["T_" + m.replace("-", "_") for m in columns])
        rows = [header]
        for i, x in enumerate(spectrum.delta1_over_kappa_tot):
            cells = [f"{x:.12g}"]
            cells += [_format_value(spectrum.transmission[m][i])
                      for m in columns]
            rows.append(",".join(cells))
        text = "\n".join(rows) + "\n"
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    elif fmt == "json":
        import json
        document = {
            "delta1_over_kappa_tot": list(spectrum.delta1_over_kappa_tot),
            "transmission": {
                method: [None if not np.isfinite(v) else float(v)
                         for v in values]
                for method, values in spectrum.transmission.items()
            },
            "metadata": spectrum.metadata,
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=1)
            handle.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r} (expected csv or json)")


def load_spectrum(path) -> Spectrum:
    """Read back a JSON spectrum written by :func:`emit`."""
    import json
    with open(path, "r", encoding="utf-8") as handle:
        document = json.load(handle)
    transmission = {
        method: np.array([np.nan if v is None else v for v in values],
                         dtype=float)
        for method, values in document["transmission"].items()
    }
    return Spectrum(np.array(document["delta1_over_kappa_tot"], dtype=float),
                    transmission, document.get("metadata", {}))
