"""Ready-made families, shapes, weights, multipliers and named scenarios."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .orlicz import OrliczFamily, OrliczSpace, family_from_config, linear, scaled_power
from .smoothness import Majorant, ShapeFunction, Weight, shape_from_config, weight_from_config
from .spectral import PsiMultiplier

__all__ = [
    "Scenario", "power_family", "l1_family", "phi_alpha", "phi_saturating",
    "classical_weights", "psi_power", "power_majorant", "scenario", "SCENARIOS",
    "TAIKOV_EXPONENT", "SATURATING_EXPONENT", "scenario_from_config", "with_tau",
]


def power_family(p: float) -> OrliczSpace:
    """``M_k(t) = t**p * (p**(-1/p) q**(-1/q))**p`` for every ``k``; ``M*_k(v) = v**q``.

    The Orlicz norm is then the ``l_p`` norm of the coefficients.
    """
    p = float(p)
    if p <= 1:
        raise ValueError("power_family needs p > 1; use l1_family for p = 1")
    q = p / (p - 1.0)
    a = (p ** (-1.0 / p) * q ** (-1.0 / q)) ** p
    fam = OrliczFamily(scaled_power(a, p), name=f"power-p{p:g}", lp=p)
    return OrliczSpace(fam)


def l1_family() -> OrliczSpace:
    """``M_k(u) = u``; the conjugate unit set is the ``l_inf`` unit ball."""
    return OrliczSpace(OrliczFamily(linear(1.0), name="l1", lp=1.0))


def phi_alpha(alpha: float) -> ShapeFunction:
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError("alpha must be positive")

    def f(t):
        # 1 - cos t = 2 sin^2(t/2), without the cancellation near t = 0
        return 2.0**alpha * np.abs(np.sin(np.asarray(t, float) / 2)) ** alpha

    return ShapeFunction(f, monotone_end=math.pi, name=f"phi_{alpha:g}", sup_value=2.0**alpha)


def phi_saturating() -> ShapeFunction:
    """``1 - cos(min(|t|, pi))``: non-decreasing everywhere, so I_n is attained at k = n for any weight."""

    def f(t):
        return 2.0 * np.sin(np.minimum(np.abs(t), math.pi) / 2) ** 2

    return ShapeFunction(f, monotone_end=math.pi, name="phi_sat", sup_value=2.0)


def classical_weights(tau: float) -> dict[str, Weight]:
    """``mu1(t) = 1 - cos t`` (density ``sin t``) and ``mu2(t) = t``."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    return {
        "mu1": Weight(tau, density=np.sin, name="mu1"),
        "mu2": Weight(tau, density=np.ones_like, name="mu2"),
    }


def psi_power(r: float) -> PsiMultiplier:
    """``psi(k) = (ik)**(-r)``; non-integer ``r >= 0`` is accepted."""
    r = float(r)
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return PsiMultiplier(lambda k: np.ones(np.shape(k), dtype=complex), name="psi=1")
    return PsiMultiplier(lambda k: (1j * np.asarray(k, float)) ** (-r), name=f"(ik)^-{r:g}")


def power_majorant(r: float) -> Majorant:
    return Majorant(lambda u: np.asarray(u, float) ** r, name=f"u^{r:g}")


# exponent at which u -> u**r makes xi = 1 a stationary point of the majorant
# condition for (phi_1, mu2, tau = pi); any smaller r breaks it just above xi = 1
TAIKOV_EXPONENT = (math.pi - 2.0) / 2.0
# same for phi_sat against Lebesgue measure plus atoms 1 at pi/2 and 0.5 at pi
SATURATING_EXPONENT = 1.5 * math.pi / (math.pi + 2.0)


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    space: OrliczSpace
    phi: ShapeFunction
    weight: Weight
    psi: PsiMultiplier
    majorant: Majorant | None = None
    note: str = ""

    @property
    def tau(self):
        return self.weight.tau


def _taikov():
    w = classical_weights(math.pi)["mu2"]
    return Scenario("sp-p2-taikov", power_family(2.0), phi_alpha(1.0), w, psi_power(1.0),
                    majorant=power_majorant(TAIKOV_EXPONENT),
                    note="L2, phi_1, mu(t)=t, psi=(ik)^-1")


def _chernykh():
    w = classical_weights(math.pi)["mu1"]
    return Scenario("sp-p2-chernykh", power_family(2.0), phi_alpha(1.0), w, psi_power(1.0),
                    note="L2, phi_1, mu(t)=1-cos t, psi=(ik)^-1; I_n is never attained at k = n for tau=pi")


def _l1():
    w = classical_weights(math.pi)["mu2"]
    return Scenario("l1", l1_family(), phi_alpha(1.0), w, psi_power(0.0), note="S^1 with the l_inf dual ball")


def _l2():
    w = classical_weights(math.pi)["mu2"]
    return Scenario("l2", power_family(2.0), phi_alpha(2.0), w, psi_power(0.0), note="M_k = t^2/4")


def _p3():
    w = classical_weights(math.pi)["mu2"]
    return Scenario("power-p3", power_family(3.0), phi_alpha(1.0), w, psi_power(2.0), note="S^3")


def _p15():
    w = classical_weights(math.pi)["mu2"]
    return Scenario("power-p1.5", power_family(1.5), phi_alpha(0.5), w, psi_power(0.5),
                    note="S^1.5, fractional alpha and r")


def _sat():
    w = Weight(math.pi, density=np.ones_like, atoms=[(math.pi / 2, 1.0), (math.pi, 0.5)], name="lebesgue+atoms")
    return Scenario("monotone-sat", power_family(2.0), phi_saturating(), w, psi_power(1.0),
                    majorant=power_majorant(SATURATING_EXPONENT),
                    note="synthetic shape non-decreasing everywhere; weight with atoms")


SCENARIOS = {
    "sp-p2-taikov": _taikov,
    "sp-p2-chernykh": _chernykh,
    "l1": _l1,
    "l2": _l2,
    "power-p3": _p3,
    "power-p1.5": _p15,
    "monotone-sat": _sat,
}


def scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {sorted(SCENARIOS)}") from None


def scenario_from_config(cfg) -> Scenario:
    """Free-form scenario from a mapping, e.g. parsed JSON.

    ``{"name", "family": {...}, "phi": {...}, "weight": {...},
    "psi": {"r": 1}, "majorant": {"r": 0.5}}``; ``family``, ``phi`` and
    ``weight`` use the ``kind`` keys of the matching ``*_from_config``.
    ``"base": <registry name>`` starts from a registered scenario.
    """
    base = scenario(cfg["base"]) if "base" in cfg else None

    def pick(key, build, attr=None):
        if key in cfg:
            return build(cfg[key])
        if base is None:
            raise KeyError(f"scenario config is missing {key!r}")
        return getattr(base, attr or key)

    space = pick("family", lambda c: OrliczSpace(family_from_config(c)), attr="space")
    phi = pick("phi", shape_from_config)
    weight = pick("weight", weight_from_config)
    psi = pick("psi", lambda c: psi_power(float(c.get("r", 0.0))))
    if "majorant" in cfg:
        majorant = None if cfg["majorant"] is None else power_majorant(float(cfg["majorant"]["r"]))
    else:
        majorant = base.majorant if base is not None else None
    name = str(cfg.get("name", base.name if base is not None else "custom"))
    return Scenario(name, space, phi, weight, psi, majorant=majorant, note=str(cfg.get("note", "from config")))


def with_tau(sc: Scenario, tau: float) -> Scenario:
    """Same scenario with the weight restricted or extended to ``[0, tau]``."""
    w = sc.weight
    atoms = [(x, m) for x, m in w.atoms if x <= tau]
    weight = Weight(float(tau), density=w.density, atoms=atoms, name=w.name)
    return Scenario(sc.name, sc.space, sc.phi, weight, sc.psi, sc.majorant, sc.note)
