"""Critically coupled ring without emitter or scatterer.

All three methods produce the same Lorentzian-like dip with zero
transmission at resonance (kappa_ex = kappa_in).
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import chiralring as cr

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)

config, spec, _ = cr.load_config(HERE.parent / "configs" /
                                 "bare_resonator.json")

spec = cr.SweepSpec(points=1001, methods=("tm", "spt", "cqed-semiclassical",
                                          "cqed-master"), master_stride=50)
spectrum, = cr.run_sweep(config, spec)

grid = spectrum.delta1_over_kappa_tot
plt.figure(figsize=(6, 4))
plt.plot(grid, spectrum.transmission["tm"], "b-", label="transfer matrix")
plt.plot(grid, spectrum.transmission["spt"], "g:", lw=2.5,
         label="single-photon transport")
plt.plot(grid, spectrum.transmission["cqed-semiclassical"], "r--",
         label="coupled modes")
master = spectrum.transmission["cqed-master"]
solved = np.isfinite(master)
plt.plot(grid[solved], master[solved], "ko", ms=3, label="master equation")
plt.xlabel(r"$\Delta_1/\kappa_{tot}$")
plt.ylabel("T")
plt.title("critically coupled bare resonator")
plt.legend()
plt.tight_layout()
plt.savefig(OUT / "bare_resonator_dip.png", dpi=150)

center = np.argmin(np.abs(grid))
print("transmission at resonance:")
for method in spectrum.methods:
    value = spectrum.transmission[method][center]
    print(f"  {method:20s} T(0) = {value:.3e}")
print(f"\nfigure written to {OUT / 'bare_resonator_dip.png'}")
