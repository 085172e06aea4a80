import math

import numpy as np
import pytest
import sympy

from orlicz_jackson import (SCENARIOS, check_normalization, check_unit_section, classical_weights, l1_family,
                            orlicz_norm_bruteforce, phi_alpha, power_family, psi_power, scenario,
                            scenario_from_config, with_tau)


def symbolic_conjugate(p):
    # sup_t (t v - a t^p) via the stationarity condition, in exact arithmetic
    t, v = sympy.symbols("t v", positive=True)
    p = sympy.Rational(p)
    q = p / (p - 1)
    a = (p ** (-1 / p) * q ** (-1 / q)) ** p
    t_star = sympy.solve(sympy.Eq(sympy.diff(t * v - a * t**p, t), 0), t)[0]
    return sympy.lambdify(v, sympy.simplify((t * v - a * t**p).subs(t, t_star)))


@pytest.mark.parametrize("p", ["3", "3/2", "2"])
def test_power_family_conjugate_against_symbolic_oracle(p):
    oracle = symbolic_conjugate(p)
    Mstar = power_family(float(sympy.Rational(p))).conj(0)
    for v in (0.2, 1.0, 2.7):
        assert Mstar(v) == pytest.approx(float(oracle(v)), rel=1e-12)


def test_power_family_p3_scaling():
    q = 1.5
    a = (3 ** (-1 / 3) * q ** (-1 / q)) ** 3
    M = power_family(3.0).family(4)
    assert M(2.0) == pytest.approx(a * 8.0)
    assert power_family(3.0).conj(4)(2.0) == pytest.approx(2.0**1.5)


def test_power_family_rejects_p_le_one():
    with pytest.raises(ValueError):
        power_family(1.0)


def test_l1_family_conjugate_and_bruteforce():
    sp = l1_family()
    m = sp.conj(0)
    assert m(0.5) == 0 and m(1.0) == 0 and m(1.5) == math.inf
    rng = np.random.default_rng(2)
    for _ in range(5):
        c = {1: complex(*rng.normal(size=2)), -3: complex(*rng.normal(size=2))}
        assert orlicz_norm_bruteforce(c, sp.conj) == pytest.approx(sp.norm(c), rel=1e-9)


def test_psi_power_examples():
    assert np.allclose(psi_power(0).modulus(np.arange(1, 50)), 1.0)
    assert psi_power(1.0).modulus(2) == pytest.approx(0.5)
    assert psi_power(1.0)(2) == pytest.approx(-0.5j)
    assert psi_power(2.5).in_Psi(1000)
    with pytest.raises(ValueError):
        psi_power(-1)


def test_mu1_first_moment():
    from orlicz_jackson import stieltjes_integral
    assert stieltjes_integral(lambda t: t, classical_weights(np.pi)["mu1"], tol=1e-13) == pytest.approx(np.pi, rel=1e-12)


def test_phi_alpha_rejects_nonpositive_alpha():
    with pytest.raises(ValueError):
        phi_alpha(0.0)


def test_registry_names_and_lookup():
    for name in ("sp-p2-taikov", "sp-p2-chernykh", "l1", "l2", "power-p3"):
        assert name in SCENARIOS
        assert scenario(name).name == name
    with pytest.raises(KeyError):
        scenario("missing")


def test_preset_components_validate():
    for name in SCENARIOS:
        sc = scenario(name)
        assert sc.phi.validate() == []
        assert sc.psi.in_Psi(500)
        assert check_unit_section(sc.space.conj, range(-10, 11))[0]
        if sc.majorant is not None:
            assert sc.majorant.validate(u_max=sc.tau) == []


def test_literal_normalization_holds_except_for_l1():
    # l1 has M* = indicator of [0, 1], so M*(1) = 0 rather than 1
    for name in SCENARIOS:
        ok, _ = check_normalization(scenario(name).space.conj, range(-5, 6))
        assert ok == (name != "l1"), name


def test_scenario_from_config_and_tau_override():
    sc = scenario_from_config({"name": "cfg", "family": {"kind": "power", "p": 3}, "phi": {"kind": "alpha", "alpha": 1},
                               "weight": {"kind": "lebesgue", "tau": 2.0}, "psi": {"r": 1}, "majorant": {"r": 0.5}})
    assert sc.name == "cfg" and sc.space.family.lp == 3.0 and sc.tau == 2.0
    assert sc.majorant(4.0) == pytest.approx(2.0)
    based = scenario_from_config({"base": "monotone-sat", "psi": {"r": 2}})
    assert based.weight.atoms == scenario("monotone-sat").weight.atoms
    assert based.psi.modulus(2) == pytest.approx(0.25)
    with pytest.raises(KeyError):
        scenario_from_config({"phi": {"kind": "alpha", "alpha": 1}})
    short = with_tau(scenario("monotone-sat"), 2.0)
    assert short.tau == 2.0 and short.weight.atoms == ((np.pi / 2, 1.0),)
