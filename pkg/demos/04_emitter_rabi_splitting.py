"""Chirally coupled emitter: from a weak perturbation to Rabi splitting.

Forward-propagating photons drive the ring mode the emitter couples to.
As the emitter-into-ring decay Gamma grows, the bridged coherent coupling
g = sqrt(Gamma (2 fsr - kappa_tot)) first barely dents the dip and then
splits it into a doublet at +-g.
"""

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

fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), sharey=True)
for ax, name, label in zip(
        axes,
        ("emitter_weak", "emitter_intermediate", "emitter_strong"),
        ("Gamma = 0.1 gamma", "Gamma = gamma", "Gamma = 100 gamma")):
    config, _, _ = cr.load_config(CONFIGS / f"{name}.json")
    spectrum, = cr.run_sweep(config, spec)
    grid = spectrum.delta1_over_kappa_tot
    ax.plot(grid, spectrum.transmission["tm"], "b-", label="TM")
    ax.plot(grid, spectrum.transmission["cqed-semiclassical"], "r--",
            label="CQED")
    ax.plot(grid, spectrum.transmission["spt"], "g:", lw=2, label="SPT")
    g_ratio = config.rates.g / config.rates.kappa_tot
    ax.set_title(f"{label}  (g/kappa_tot = {g_ratio:.3f})")
    ax.set_xlabel(r"$\Delta_1/\kappa_{tot}$")
    ax.set_xlim(-3, 3)
    dips = cr.local_minima(grid, spectrum.transmission["spt"])
    print(f"{label:20s} g/kappa_tot = {g_ratio:6.3f}, dips at "
          + (", ".join(f"{x:+.3f}" for x, _ in dips) or "none"))
axes[0].set_ylabel("T")
axes[0].legend()
fig.tight_layout()
fig.savefig(OUT / "emitter_rabi_splitting.png", dpi=150)
print(f"figure written to {OUT / 'emitter_rabi_splitting.png'}")
