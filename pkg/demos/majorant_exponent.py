"""Which power majorants u^r satisfy the scaling condition.

The condition compares Omega(u/xi) L(xi) with Omega(u) L(1), where
L(xi) = int phi_*(xi s) dmu(s). Both sides agree at xi = 1, so for a power
majorant the left side must be stationary there, which fixes r = L'(1)/L(1).
Exponents on either side fail on the grid.
"""

import numpy as np

from orlicz_jackson import Majorant, critical_exponent, majorant_condition, power_majorant, scenario

sc = scenario("sp-p2-taikov")
r_star = critical_exponent(sc.phi, sc.weight)
print(f"critical exponent {r_star:.10f}  ((pi - 2)/2 = {(np.pi - 2) / 2:.10f})")

print("\n r        holds   worst xi   worst u   excess")
for r in (0.5, 0.55, r_star, 0.6, 1.0):
    m = majorant_condition(sc.phi, sc.weight, power_majorant(r))
    print(f"{r:.4f}   {str(m.holds):5s}   {m.worst_xi:8.4f}   {m.worst_u:6.4f}   {m.worst_excess:.2e}")

fast = majorant_condition(sc.phi, sc.weight, Majorant(lambda u: np.expm1(5 * u)))
print(f"\nexp(5u) - 1: holds={fast.holds}, witness xi={fast.worst_xi:.3f} u={fast.worst_u:.3f}")
