"""Walk through the parameter bridges connecting the three descriptions.

The transfer-matrix picture speaks in coupler coefficients (t, alpha) and
a scatterer strength epsilon; the rate pictures speak in decay rates
(kappa_in, kappa_ex), an emitter-into-ring decay Gamma or a coherent
coupling g, and a backscatter rate h.  The bridges convert exactly.
"""

import numpy as np

import chiralring as cr

TWO_PI = 2 * np.pi

fsr = TWO_PI * 3e12          # free spectral range, rad/s
gamma = TWO_PI * 6e6         # emitter dissipation

print("coupler -> rates (exact logarithmic form)")
for t, alpha in [(0.99, 0.99), (0.95, 0.99), (0.999, 0.995)]:
    kappa_in, kappa_ex = cr.coupler_to_rates(t, alpha, fsr)
    print(f"  t={t:<6} alpha={alpha:<6} ->  kappa_in/2pi = "
          f"{kappa_in / TWO_PI / 1e9:7.2f} GHz,  kappa_ex/2pi = "
          f"{kappa_ex / TWO_PI / 1e9:7.2f} GHz")

# the paper-style first-order form is available too; at t = 0.99 it
# reads exactly 30 GHz instead of 30.15 GHz
kappa_in_fo, kappa_ex_fo = cr.coupler_to_rates(0.99, 0.99, fsr,
                                               first_order=True)
print(f"  first-order at t=0.99:  kappa_ex/2pi = "
      f"{kappa_ex_fo / TWO_PI / 1e9:.2f} GHz")

print("\nemitter decay <-> coherent coupling (kappa_tot/2pi = 60 GHz)")
kappa_tot = TWO_PI * 60e9
for mult in (0.1, 1.0, 100.0):
    Gamma = mult * gamma
    g = cr.emitter_coupling_rate(Gamma, fsr, kappa_tot)
    back = cr.emitter_decay_rate(g, fsr, kappa_tot)
    print(f"  Gamma = {mult:>5}*gamma -> g/kappa_tot = "
          f"{g / kappa_tot:.4f}   (round trip error "
          f"{abs(back - Gamma):.2e})")

print("\nscatterer strength <-> backscatter rate")
for epsilon in (0.01, 0.05, 0.1):
    h = cr.backscatter_rate(epsilon, fsr)
    print(f"  epsilon = {epsilon:<5} -> h/2pi = {h / TWO_PI / 1e9:6.1f} GHz "
          f"(h/kappa_in = {h / (TWO_PI * 30e9):.1f})")

print("\nthe emitter as a phase-amplitude modulator")
Gamma = 100 * gamma
for delta_over in (-5.0, 0.0, 5.0):
    delta = delta_over * (gamma + Gamma)
    t_qe = cr.emitter_transmission(delta, gamma, Gamma)
    phase, dissipation = cr.phase_amplitude_split(t_qe)
    print(f"  delta = {delta_over:+.0f}(gamma+Gamma): t_qe = {t_qe:.4f} "
          f"= exp({phase:+.3f}i) * exp(-{dissipation:.4f})")

# an extra round-trip phase is the same thing as a pulled ring resonance
omega = TWO_PI * 3e14
phase_on_resonance, _ = cr.phase_amplitude_split(
    cr.emitter_transmission(0.0, gamma, Gamma))
pulled = cr.effective_resonance(omega, phase_on_resonance, 99)
print(f"\non-resonance phase pi pulls the m=99 resonance by "
      f"{(omega - pulled) / TWO_PI / 1e12:.2f} THz")
