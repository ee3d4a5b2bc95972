# Ground energies of pair-coupling spin chains
#
# The chain with one swap-symmetric projector per bond is the one whose
# energy enters the first-order formula.  Exact diagonalization for small
# rings, Lanczos for the rest, and the thermodynamic value from digamma
# functions.

from dilute1d.spin_chain import (
    finite_size_sandwich,
    llh_chain_energy,
    llh_thermodynamic,
    thermodynamic_energy_per_site,
)

for J in (0.5, 1.0, 1.5):
    print(f"J={J}: eps_inf = {thermodynamic_energy_per_site(J):.12f}")

# Finite rings approach the limit within 1/N from either side.

print("\n  N   eps(N)          lower     upper")
for row in finite_size_sandwich(0.5, [4, 6, 8, 10, 12]):
    print(f"{row.N:3d}   {row.epsilon:.10f}  {row.lower:.5f}  {row.upper:.5f}  {'ok' if row.passed else 'OUT'}")

# The same machinery with two couplings weighted by 1/c and 1/c'.

for N in (6, 8, 10, 12):
    print(f"LLH c=4 c'=1  N={N:2d}: {llh_chain_energy(4.0, 1.0, N):.8f}")
print("thermodynamic:", llh_thermodynamic(4.0, 1.0))
