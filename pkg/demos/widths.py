"""Widths of the smoothness classes for a shape where the extremal family works for every n.

phi_sat(t) = 2 sin^2(min(|t|, pi)/2) is monotone on [0, pi], so the infimum
over dilations is always attained at k = n and the lower and upper width
bounds coincide. The Bernstein ball and the projection bound are checked by
sampling.
"""

from orlicz_jackson import (ClassSpec, scenario, verify_bernstein_lower, verify_projection_upper,
                            width_value)

sc = scenario("monotone-sat")
for majorant in (False, True):
    spec = ClassSpec.from_scenario(sc, majorant=majorant)
    print(f"\nclass mode: {spec.mode}")
    print(" n   lower         upper         bernstein@R  bernstein@1.5R  projection")
    for n in (1, 2, 4):
        w = width_value(spec, n)
        ok = verify_bernstein_lower(spec, n, samples=200, rng=n)
        past = verify_bernstein_lower(spec, n, samples=200, radius_scale=1.5, rng=n)
        proj = verify_projection_upper(spec, n, samples=200, rng=n)
        print(f"{n:2d}   {w.lower:.10f}  {w.upper:.10f}  {ok.violations:5d}        {past.violations:5d}"
              f"           {proj.sup_ratio:.8f}")
