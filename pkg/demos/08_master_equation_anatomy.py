"""Look inside the Lindblad solver.

Builds the joint-space Hamiltonian and Liouvillian for the strong-coupling
set, solves the steady state three independent ways on a balanced test
system, and prints the physicality certificate the sweep machinery records
for every solved grid point.
"""

import pathlib
import sys

import numpy as np

import chiralring as cr
from chiralring import cqed

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent
                       / "tests"))
from conftest import balanced_reference_config  # noqa: E402

HERE = pathlib.Path(__file__).resolve().parent
config, _, _ = cr.load_config(HERE.parent / "configs" /
                              "emitter_strong.json")

space = cqed.HilbertSpace()  # 4 x 4 Fock levels x 2 emitter states
print(f"joint space: {space.n_max_a} x {space.n_max_b} x 2 = "
      f"{space.dimension} states; Liouvillian "
      f"{space.liouvillian_dimension} x {space.liouvillian_dimension}")

h_matrix = cqed.build_hamiltonian(config, space, delta1=0.0)
print(f"Hamiltonian hermiticity defect: "
      f"{np.abs(h_matrix - h_matrix.conj().T).max():.1e}")

result = cqed.master_steady_state(config, 0.0, keep_rho=True)
print("\nsteady state at resonance (strong coupling):")
print(f"  <a>   = {result.a_expect:.3e}")
print(f"  <s->  = {result.sigma_expect:.3e}")
print(f"  T     = {result.transmission:.6f}  "
      f"(semiclassical {abs(cqed.semiclassical_transmission(config, 0.0))**2:.6f})")
print(f"  residual           {result.residual:.2e}")
print(f"  trace deviation    {result.trace_deviation:.2e}")
print(f"  hermiticity        {result.hermiticity_deviation:.2e}")
print(f"  min eigenvalue     {result.min_eigenvalue:.2e}")
print(f"  top Fock populations  a: {result.top_population_a:.2e}, "
      f"b: {result.top_population_b:.2e}")

# the three solver routes agree on a balanced reference system
reference = balanced_reference_config()
small = cqed.HilbertSpace(3, 3)
print("\nsolver cross-check on an order-unity-rate system:")
for method in ("direct", "eigen", "evolve"):
    out = cqed.master_steady_state(reference, 0.37, space=small,
                                   method=method)
    print(f"  {method:6s} <a> = {out.a_expect.real:+.12f} "
          f"{out.a_expect.imag:+.12f}i   (residual {out.residual:.1e})")
