# Scattering lengths of short-range pair potentials
#
# At zero energy the relative wave function of a pair solves -F'' + V F / 2 = 0.
# Outside the potential range it is a straight line, and where that line
# crosses zero is the scattering length.  Even and odd channels give two
# numbers, a_e for the symmetric wave and a_o for the antisymmetric one.

import math

from dilute1d import potentials
from dilute1d.scattering import solve_scalar_scattering

# A single delta of strength c: a_e = -2/c, and the odd wave does not see it.

for c in (0.5, 2.0, 10.0):
    v = potentials.delta(c)
    ae = solve_scalar_scattering(v, 1.0, "even").a
    ao = solve_scalar_scattering(v, 1.0, "odd").a
    print(f"delta c={c:5.1f}   a_e={ae:+.10f} (expect {-2 / c:+.10f})   a_o={ao:+.1e}")

# Two deltas at +-R0.  The even channel has a negative length, the odd
# channel a small positive one, and a_e <= a_o always holds.

v = potentials.double_delta(2.0, 0.1)
for parity in ("even", "odd"):
    r = solve_scalar_scattering(v, 0.5, parity)
    print(f"double delta {parity:4s}  a={r.a:+.12f}  energy={r.energy:.6f}")
print("odd closed form R0 - R0/(1 + R0 c) =", 0.1 - 0.1 / 1.2)

# A hard core of radius a just shifts the node: both lengths equal a.

hc = potentials.hard_core(0.05)
print("hard core:", solve_scalar_scattering(hc, 1.0, "even").a, solve_scalar_scattering(hc, 1.0, "odd").a)

# The result must not depend on where we match to the straight line.

sq = potentials.square_barrier(50.0, 0.3)
print("square barrier a_e at R=0.5, 1, 3:",
      [round(solve_scalar_scattering(sq, R, "even").a, 12) for R in (0.5, 1.0, 3.0)])
k = math.sqrt(25.0)
print("  closed form:", 0.3 - 1 / (k * math.tanh(k * 0.3)))
