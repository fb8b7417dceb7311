"""Quantify the agreement of the three methods on every parameter set.

The coupled-mode steady state with the emitter frozen in its ground
state is algebraically identical to the single-photon-transport formula,
so that pair agrees to machine precision.  The transfer-matrix mapping
is a first-order identification (exp(i theta) ~ 1 + i delta tau), good
to about 1e-2 in T over a +-10 kappa_tot window.  The master equation
is solved on a strided grid and compared where it ran.
"""

import pathlib

import chiralring as cr

HERE = pathlib.Path(__file__).resolve().parent
CONFIGS = HERE.parent / "configs"

SETS = ("bare_resonator", "backscatter_weak", "backscatter_strong",
        "emitter_weak", "emitter_intermediate", "emitter_strong",
        "combined_weak_backscatter", "combined_strong_backscatter")

spec = cr.SweepSpec(points=2001,
                    methods=("tm", "spt", "cqed-semiclassical",
                             "cqed-master"),
                    master_stride=100)

print(f"{'parameter set':30s} {'tm vs spt':>12s} {'spt vs cqed':>12s} "
      f"{'master vs cqed':>15s}")
for name in SETS:
    config, _, _ = cr.load_config(CONFIGS / f"{name}.json")
    spectrum, = cr.run_sweep(config, spec)
    report = cr.compare_report(spectrum)
    pairs = report["pairs"]
    print(f"{name:30s} "
          f"{pairs['tm vs spt']['max_abs_diff']:12.3e} "
          f"{pairs['spt vs cqed-semiclassical']['max_abs_diff']:12.3e} "
          f"{pairs['cqed-semiclassical vs cqed-master']['max_abs_diff']:15.3e}"
          + ("" if report["pass"] else "   <- tolerance violated"))

print("\npairwise tolerances:")
for pair, tolerance in sorted(cr.sweep.DEFAULT_TOLERANCES.items(),
                              key=lambda kv: sorted(kv[0])):
    print(f"  {' vs '.join(sorted(pair)):45s} {tolerance:.0e}")
