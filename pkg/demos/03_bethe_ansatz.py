# Exactly solvable delta gases
#
# The bosonic gas and the spin-1/2 fermionic gas with delta interactions are
# solved through linear integral equations, discretized on Gauss-Legendre
# nodes.  We check the dilute behaviour e/rho^3 = pi^2/3 (1 - 4 b rho/c)
# with b = 1 for bosons and ln 2 for the fermions.

import math

from dilute1d.bethe import solve_lieb_liniger, solve_yang_gaudin

PI2_3 = math.pi ** 2 / 3

print("    c     bosons e/rho^3   band coeff    fermions e/rho^3   band coeff   M/L")
for c in (50.0, 100.0, 200.0):
    g = 1 / c
    ll = solve_lieb_liniger(1.0, c)
    yg = solve_yang_gaudin(1.0, c)
    b_ll = abs(ll.e_per_rho3 - PI2_3 * (1 - 4 * g)) / (PI2_3 * g * g)
    b_yg = abs(yg.e_per_rho3 - PI2_3 * (1 - 4 * math.log(2) * g)) / (PI2_3 * g * g)
    print(f"{c:6.0f}   {ll.e_per_rho3:.10f}   {b_ll:8.3f}    {yg.e_per_rho3:.10f}   {b_yg:8.3f}   {yg.m_density:.6f}")

# Infinite repulsion gives back free fermions.
print("\nhuge c:", solve_lieb_liniger(1.0, 1e6).e_per_rho3, "vs", PI2_3)
