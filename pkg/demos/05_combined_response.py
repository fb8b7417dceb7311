"""Strong emitter coupling combined with backscattering."""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

import chiralring as cr

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)
CONFIGS = HERE.parent / "configs"

spec = cr.SweepSpec(points=2001, methods=("tm", "spt", "cqed-semiclassical"))

fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
for ax, name, label in zip(
        axes,
        ("combined_weak_backscatter", "combined_strong_backscatter"),
        ("Gamma = 100 gamma, h = kappa_in",
         "Gamma = 100 gamma, h = 10 kappa_in")):
    config, _, _ = cr.load_config(CONFIGS / f"{name}.json")
    spectrum, = cr.run_sweep(config, spec)
    grid = spectrum.delta1_over_kappa_tot
    ax.plot(grid, spectrum.transmission["tm"], "b-", label="TM")
    ax.plot(grid, spectrum.transmission["cqed-semiclassical"], "r--",
            label="CQED")
    ax.plot(grid, spectrum.transmission["spt"], "g:", lw=2, label="SPT")
    ax.set_title(label, fontsize=10)
    ax.set_xlabel(r"$\Delta_1/\kappa_{tot}$")
axes[0].set_ylabel("T")
axes[0].legend()
fig.tight_layout()
fig.savefig(OUT / "combined_response.png", dpi=150)
print(f"figure written to {OUT / 'combined_response.png'}")
