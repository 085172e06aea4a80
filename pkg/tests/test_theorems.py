import math
import warnings

import numpy as np
import pytest

from orlicz_jackson import (SATURATING_EXPONENT, TAIKOV_EXPONENT, ClassSpec, Condition12Warning, Majorant,
                            Spectrum, Weight, class_membership, classical_weights, critical_exponent,
                            extremal_function, I_n, jackson_verify, majorant_condition, phi_alpha,
                            phi_saturating, power_family, power_majorant, psi_power, random_spectrum, scenario,
                            sharp_constant, sharpness_ratio, verify_bernstein_lower, verify_projection_upper,
                            width_value, best_approximation, SCENARIOS)

PI = math.pi
MU2 = classical_weights(PI)["mu2"]


def spec_for(name, n=None, majorant=False):
    return ClassSpec.from_scenario(scenario(name), n=n, majorant=majorant)


# ---------------------------------------------------------------- I_n


def test_I_n_phi1_lebesgue_n1_is_four():
    res = I_n(phi_alpha(1.0), MU2, 1)
    assert res.value == pytest.approx(4.0, rel=1e-9)
    assert res.reference == pytest.approx(4.0, rel=1e-12)
    assert res.attained_at_n and res.k_max == 64


def test_I_n_detects_failure_of_condition12():
    # n = 2, k = 5: 0.4 * (8 + 4 (1 - cos(pi/4)))
    res = I_n(phi_alpha(1.0), MU2, 2)
    assert not res.attained_at_n
    assert res.argmin_k == 5
    assert res.value == pytest.approx(0.4 * (8 + 4 * (1 - math.cos(PI / 4))), rel=1e-9)


def test_I_n_monotone_shape_is_attained_at_n():
    w = Weight(PI, density=np.ones_like, atoms=[(1.0, 2.0)])
    for n in (1, 3):
        res = I_n(phi_saturating(), w, n, k_max=10 * n)
        assert res.argmin_k == n and res.attained_at_n
        assert res.value == pytest.approx(res.reference, rel=1e-12)


def test_I_n_single_atom():
    w = Weight(2.0, atoms=[(2.0, 0.7)])
    phi = phi_alpha(1.0)
    n, kmax = 2, 9
    res = I_n(phi, w, n, k_max=kmax)
    expected = min(0.7 * phi(k * 2.0 / n) for k in range(n, kmax + 1))
    assert res.value == pytest.approx(expected, rel=1e-14)
    assert res.tail_bound == pytest.approx(2.0 * 0.7, rel=1e-6)


def test_I_n_argument_checks():
    with pytest.raises(ValueError):
        I_n(phi_alpha(1.0), MU2, 0)
    with pytest.raises(ValueError):
        I_n(phi_alpha(1.0), MU2, 3, k_max=2)


def test_chernykh_preset_never_satisfies_condition12():
    for n in (1, 2):
        res = I_n(phi_alpha(1.0), classical_weights(PI)["mu1"], n)
        assert not res.attained_at_n
        assert res.reference == pytest.approx(8 / 3, rel=1e-12)
        assert res.value < 8 / PI + 1e-2


# ---------------------------------------------------------------- constants


def test_sharp_constant_pi_over_four():
    spec = ClassSpec(power_family(2.0), phi_alpha(1.0), MU2, psi_power(0.0), n=1)
    assert sharp_constant(spec) == pytest.approx(PI / 4, rel=1e-12)


def test_sharp_constant_atomic_weight():
    w = Weight(1.0, atoms=[(1.0, 3.0)])
    phi = phi_saturating()
    spec = ClassSpec(power_family(2.0), phi, w, psi_power(0.0), n=1)
    assert sharp_constant(spec) == pytest.approx(1 / phi(1.0), rel=1e-14)


def test_sharp_constant_scales_with_psi():
    spec = spec_for("monotone-sat")
    c1, c4 = sharp_constant(spec, 1), sharp_constant(spec, 4)
    assert c4 / c1 == pytest.approx(0.25, rel=1e-12)


def test_sharp_constant_warns_without_condition12():
    with pytest.warns(Condition12Warning):
        sharp_constant(spec_for("sp-p2-chernykh", n=1))


def test_extremal_function_examples():
    assert extremal_function(2, 1, 0, 1) == Spectrum({2: 1})
    assert extremal_function(1, 3j, 5, -1) == Spectrum({0: 5, -1: 3j})
    with pytest.raises(ValueError):
        extremal_function(0)
    for name in SCENARIOS:
        sp = scenario(name).space
        assert best_approximation(extremal_function(3, 2 - 1j, 4.0), 3, sp) == pytest.approx(abs(2 - 1j), rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_sharpness_identity_monotone_scenario(n):
    spec = spec_for("monotone-sat", n=n)
    assert spec.I_n(n).attained_at_n
    assert sharpness_ratio(spec) / sharp_constant(spec) == pytest.approx(1.0, abs=1e-6)


def test_sharpness_identity_taikov_n1_and_atomic():
    spec = spec_for("sp-p2-taikov", n=1)
    assert sharpness_ratio(spec) / sharp_constant(spec) == pytest.approx(1.0, abs=1e-6)
    w = Weight(PI, atoms=[(PI, 2.0)])
    spec = ClassSpec(power_family(2.0), phi_saturating(), w, psi_power(0.0), n=3)
    # both sides reduce to 1 / phi(pi)
    assert sharpness_ratio(spec) == pytest.approx(0.5, rel=1e-12)
    assert sharp_constant(spec) == pytest.approx(0.5, rel=1e-12)


# ---------------------------------------------------------------- Jackson


def test_jackson_trivial_polynomial():
    rep = jackson_verify(Spectrum({-1: 2, 0: 1, 1: 3}), spec_for("l2", n=2))
    assert rep.E_n == 0 and rep.verdict


def test_jackson_extremal_ratio_is_I_over_integral():
    for name, n in (("sp-p2-taikov", 1), ("sp-p2-taikov", 2), ("monotone-sat", 4)):
        spec = spec_for(name, n=n)
        res = spec.I_n(n)
        rep = jackson_verify(extremal_function(n, 1.0), spec)
        assert rep.ratio_extremal == pytest.approx(res.value / res.reference, abs=1e-9)
        assert rep.ratio == pytest.approx(rep.ratio_extremal, abs=1e-9)


def test_jackson_random_degree12_taikov_n3():
    spec = spec_for("sp-p2-taikov", n=3)
    rng = np.random.default_rng(12)
    for _ in range(20):
        rep = jackson_verify(random_spectrum(rng, 12), spec)
        assert rep.verdict and rep.ratio <= 1


def test_jackson_report_is_scale_invariant():
    spec = spec_for("power-p3", n=2)
    f = random_spectrum(np.random.default_rng(3), 10)
    a, b = jackson_verify(f, spec), jackson_verify(f * (-7.5j), spec)
    assert b.ratio == pytest.approx(a.ratio, rel=1e-9)
    assert b.E_n == pytest.approx(7.5 * a.E_n, rel=1e-12)


# ---------------------------------------------------------------- classes and widths


def test_class_membership_examples():
    spec = spec_for("monotone-sat", n=2)
    assert class_membership(Spectrum(), spec).member
    f = extremal_function(2, 1.0)
    from orlicz_jackson import averaged_modulus, psi_derivative
    om = averaged_modulus(psi_derivative(f, spec.psi), spec.phi, spec.weight, spec.tau / 2, spec.space)
    m = class_membership(f / om, spec)
    assert m.member and abs(m.margin) < 1e-9
    assert not class_membership(f * 1e6, spec).member


def test_class_membership_majorant_mode():
    spec = spec_for("monotone-sat", n=2, majorant=True)
    assert class_membership(Spectrum({3: 1e-3}), spec).member
    assert not class_membership(Spectrum({3: 10.0}), spec).member


def test_width_value_bounds():
    for name in SCENARIOS:
        for n in (1, 2):
            spec = spec_for(name, n=n)
            for N in (2 * n - 1, 2 * n):
                w = width_value(spec, n, N)
                assert w.lower <= w.upper * (1 + 1e-12)
                if spec.I_n(n).attained_at_n:
                    assert w.exact == pytest.approx(w.upper, rel=1e-6)
                    assert w.lower == pytest.approx(w.upper, rel=1e-6)
                else:
                    assert w.exact is None
    with pytest.raises(ValueError):
        width_value(spec_for("l2", n=2), 2, 7)


def test_width_value_monotone_exact_formula():
    spec = spec_for("monotone-sat", n=3)
    w = width_value(spec)
    assert w.exact == pytest.approx(spec.weight.total_variation / 3 / (PI + 2), rel=1e-12)


def test_majorant_widths_decay_exponent():
    spec = spec_for("monotone-sat", majorant=True)
    ns = np.array([2, 4, 8])
    vals = np.array([width_value(spec, int(n)).lower for n in ns])
    slope = np.polyfit(np.log(ns), np.log(vals), 1)[0]
    assert slope == pytest.approx(-(1 + SATURATING_EXPONENT), rel=1e-9)


def test_bernstein_embedding_monotone():
    spec = spec_for("monotone-sat", n=2)
    assert verify_bernstein_lower(spec, samples=200, rng=1).violations == 0
    assert verify_bernstein_lower(spec, samples=200, radius_scale=1.5, rng=1).violations >= 1


def test_bernstein_single_harmonic_atomic():
    w = Weight(PI, atoms=[(PI, 1.0)])
    spec = ClassSpec(power_family(2.0), phi_saturating(), w, psi_power(0.0), n=1)
    res = verify_bernstein_lower(spec, samples=100, rng=0)
    assert res.violations == 0
    # one harmonic of modulus R_1 = 1/phi(pi): margin 0 exactly
    assert res.radius == pytest.approx(0.5) and res.max_margin <= 1e-12


def test_projection_upper_bound():
    for name, n in (("monotone-sat", 2), ("sp-p2-taikov", 1), ("sp-p2-chernykh", 2)):
        spec = spec_for(name, n=n)
        res = verify_projection_upper(spec, samples=100, rng=0)
        assert res.sup_ratio <= 1 + 1e-6
        if spec.I_n(n).attained_at_n:
            assert res.extremal_ratio == pytest.approx(1.0, abs=1e-6)


def test_class_spec_validation():
    for name in SCENARIOS:
        assert spec_for(name, n=2).validate(kmax=200) == []
    assert spec_for("l2").validate(kmax=200) == ["n must be >= 1"]


# ---------------------------------------------------------------- majorant condition


def test_majorant_condition_critical_exponent_passes():
    sc = scenario("sp-p2-taikov")
    m = majorant_condition(sc.phi, sc.weight, power_majorant(TAIKOV_EXPONENT))
    assert m.holds and m.slice_error <= 1e-12


def test_majorant_condition_fast_growth_fails_with_witness():
    sc = scenario("sp-p2-taikov")
    m = majorant_condition(sc.phi, sc.weight, Majorant(lambda u: np.expm1(5 * u)))
    assert not m.holds
    assert m.worst_excess > 0 and 0.1 <= m.worst_xi <= 10 and 0 < m.worst_u <= PI


def test_majorant_condition_off_critical_exponents_fail():
    sc = scenario("sp-p2-taikov")
    low = majorant_condition(sc.phi, sc.weight, power_majorant(0.5))
    high = majorant_condition(sc.phi, sc.weight, power_majorant(1.0))
    assert not low.holds and low.worst_xi > 1
    assert not high.holds and high.worst_xi < 1


def test_majorant_condition_needs_tau_below_a():
    w = Weight(4.0, density=np.ones_like)
    with pytest.raises(ValueError):
        majorant_condition(phi_alpha(1.0), w, power_majorant(0.5))


def test_critical_exponents_match_closed_forms():
    sc = scenario("sp-p2-taikov")
    assert critical_exponent(sc.phi, sc.weight) == pytest.approx((PI - 2) / 2, rel=1e-8)
    sc = scenario("monotone-sat")
    assert critical_exponent(sc.phi, sc.weight) == pytest.approx(1.5 * PI / (PI + 2), rel=1e-8)
    m = majorant_condition(sc.phi, sc.weight, sc.majorant)
    assert m.holds


def test_I_n_ties_report_smallest_k():
    # int_0^pi phi_1(k t) dt = 4 for every integer k
    assert I_n(phi_alpha(1.0), MU2, 1).argmin_k == 1
