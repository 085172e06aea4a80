"""Sharp Jackson constant in L2 and where the extremal family stops being extremal.

With phi_1(t) = 2|sin(t/2)| and Lebesgue weight on [0, pi] the integral
int phi_1 dt equals 4, so the constant for n = 1 is pi/4. For larger n the
infimum over dilations drops below that integral, and the single harmonic
e^{inx} no longer attains the bound.
"""

import numpy as np

from orlicz_jackson import ClassSpec, extremal_function, jackson_verify, random_spectrum, scenario, sharp_constant

spec = ClassSpec.from_scenario(scenario("sp-p2-taikov"), n=1)
print(f"sharp constant n=1: {sharp_constant(spec):.12f}  (pi/4 = {np.pi / 4:.12f})")

print("\n n   I_n         int phi dmu   argmin k   attained")
for n in (1, 2, 3, 4, 8):
    res = spec.I_n(n)
    print(f"{n:2d}   {res.value:.8f}  {res.reference:.8f}    {res.argmin_k:4d}      {res.attained_at_n}")

# the extremal ratio equals I_n / int phi dmu; random f sit below it
rng = np.random.default_rng(0)
for n in (1, 2):
    ext = jackson_verify(extremal_function(n, 1.0), spec, n)
    worst = max(jackson_verify(random_spectrum(rng, 4 * n), spec, n).ratio for _ in range(200))
    print(f"\nn={n}: extremal ratio {ext.ratio:.6f}, largest of 200 random ratios {worst:.6f}")
