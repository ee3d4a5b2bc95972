# First-order energy of a dilute spinful gas
#
# Free fermions plus 2 rho [a_e + (a_o - a_e) eps] per particle, where eps
# is the spin-chain energy.  We compare against three exact references.

import math

from dilute1d.expansion import hard_core_compare, llh_compare, theorem1_energy, yg_cross_check
from dilute1d.spin_chain import thermodynamic_energy_per_site

eps = thermodynamic_energy_per_site(0.5)
rep = theorem1_energy(100, 10000, -0.02, 0.0, eps)
print("delta gas, N=100 L=1e4:", rep.total_first_order, " correction/particle", rep.correction)

# Hard cores: the exact energy is a free gas in a shorter box.
for L in (200, 500, 1000):
    h = hard_core_compare(10, L, 1.0)
    print(f"hard core L={L:5d}: exact={h.exact:.8e}  first order={h.series:.8e}  gap/leading={h.gap / h.leading:.2e}")

# The spin-1/2 delta gas against its Bethe solution.
for c in (100.0, 1000.0):
    y = yg_cross_check(1.0, c)
    print(f"c={c:6.0f}: Bethe {y.bethe:.10f}  first order {y.expansion:.10f}  diff {abs(y.bethe - y.expansion):.2e}")

# Two couplings c > c': a strong-coupling mapping sits above our value.
r = llh_compare(0.01, 4.0, 1.0)
print("LLH c=4 c'=1:", r.ours, "mapping", r.girardeau, "margin", r.margin)
print("c = c' margin:", llh_compare(1.0, 1.0, 1.0).margin, " ln 2 =", math.log(2))
