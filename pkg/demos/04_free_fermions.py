# Free fermions in a box: reduced densities
#
# Densities of any order are determinants of the one-body kernel.  Two
# particles cannot sit at the same point, and close to each other the pair
# density vanishes quadratically in the gap.

import numpy as np

from dilute1d.free_fermi import (
    FreeFermiBox,
    check_density_bounds,
    density_table,
    free_fermi_energy,
    midbox_coefficient,
)

box = FreeFermiBox(6, 6.0)
print("energy", free_fermi_energy(6, 6.0), " Gram residual", box.gram_residual())

table = density_table(box, 11)
print("\n   x      rho1      rho2(x, L/2)")
for x, r1, r2 in table:
    print(f"{x:5.2f}  {r1:.6f}  {r2:.6f}")

rep = midbox_coefficient(box)
print("\nsmall-gap coefficient at mid-box:", rep.finite_difference, "exact:", rep.limit,
      "bulk pi^2/3:", rep.bulk)

for N in (4, 8):
    b = check_density_bounds(FreeFermiBox(N, float(N)), samples=10000)
    print(f"N={N}: max rho2/(8 pi^2 rho^4 gap^2) = {b.max_ratio2:.4f}  c3~{b.fitted_c3:.3g}  c4~{b.fitted_c4:.3g}")
