"""Sharp Jackson-type constants, class membership and width bounds.

Both sides of every inequality are computed independently: best
approximations from tail norms, averaged moduli from quadrature of the
modulus profile. Width values are the closed-form bounds; the two explicit
constructions behind them (Fourier projection and the centred ball of
polynomials of order ``n``) are checked by sampling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from ._numerics import adaptive_simpson_batch
from .orlicz import check_unit_section
from .presets import Scenario
from .smoothness import (Majorant, ModulusProfile, ShapeFunction, Weight, averaged_modulus,
                         averaged_modulus_many, phi_star, stieltjes_integral)
from .spectral import PsiMultiplier, Spectrum, best_approximation, psi_derivative, random_spectrum

__all__ = [
    "ClassSpec", "InResult", "JacksonReport", "WidthReport", "Membership",
    "BernsteinCheck", "ProjectionCheck", "MajorantCheck", "Condition12Warning",
    "I_n", "jackson_verify", "sharp_constant", "extremal_function", "sharpness_ratio",
    "class_membership", "width_value", "verify_bernstein_lower", "verify_projection_upper",
    "majorant_condition", "critical_exponent",
]

CONDITION12_RTOL = 1e-7
JACKSON_SLACK = 1e-7


class Condition12Warning(UserWarning):
    pass


@dataclass(frozen=True)
class InResult:
    value: float
    argmin_k: int
    attained_at_n: bool
    reference: float
    k_max: int
    tail_bound: float


@dataclass(eq=False)
class ClassSpec:
    """Parameters of one of the two function classes.

    ``n`` set: class defined by ``Omega_phi(f^psi, tau, mu, tau/n) <= 1``.
    ``majorant`` set: ``Omega_phi(f^psi, tau, mu, u) <= Omega(u)`` for
    ``0 < u <= tau``.
    """

    space: object
    phi: ShapeFunction
    weight: Weight
    psi: PsiMultiplier
    n: int | None = None
    majorant: Majorant | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_scenario(cls, sc: Scenario, n: int | None = None, majorant: bool = False) -> "ClassSpec":
        if majorant and sc.majorant is None:
            raise ValueError(f"scenario {sc.name!r} has no majorant")
        return cls(sc.space, sc.phi, sc.weight, sc.psi, n=n,
                   majorant=sc.majorant if majorant else None)

    @property
    def tau(self) -> float:
        return self.weight.tau

    @property
    def mode(self) -> str:
        return "majorant" if self.majorant is not None else "n"

    def validate(self, kmax: int = 1000) -> list[str]:
        problems = []
        if not self.psi.in_Psi(kmax):
            problems.append("psi not in Psi")
        problems += [f"phi: {p}" for p in self.phi.validate()]
        ok, _ = check_unit_section(self.space.conj, range(-kmax // 10, kmax // 10 + 1))
        if not ok:
            problems.append("conjugate unit section is not [0, 1]")
        if self.majorant is not None:
            problems += [f"Omega: {p}" for p in self.majorant.validate(u_max=self.tau)]
            if self.tau > self.phi.monotone_end:
                problems.append("tau exceeds the monotone end a")
        elif self.n is None or self.n < 1:
            problems.append("n must be >= 1")
        return problems

    def phi_integral(self) -> float:
        if "phi_int" not in self._cache:
            self._cache["phi_int"] = stieltjes_integral(self.phi, self.weight, tol=1e-12)
        return self._cache["phi_int"]

    def I_n(self, n: int) -> InResult:
        key = ("I_n", n)
        if key not in self._cache:
            self._cache[key] = I_n(self.phi, self.weight, n)
        return self._cache[key]


@dataclass
class JacksonReport:
    n: int
    E_n: float
    averaged_modulus: float
    I_n: float
    rhs: float
    sharp_constant: float
    ratio: float
    ratio_extremal: float
    condition12_holds: bool
    verdict: bool
    degenerate: bool = False

    def as_dict(self):
        return asdict(self)


@dataclass
class WidthReport:
    n: int
    N: int
    lower: float
    upper: float
    exact: float | None
    R_n: float
    embedding_violations: int | None = None
    projection_sup: float | None = None
    mode: str = "n"

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Membership:
    member: bool
    margin: float


@dataclass(frozen=True)
class BernsteinCheck:
    violations: int
    samples: int
    radius: float
    max_margin: float


@dataclass(frozen=True)
class ProjectionCheck:
    sup_E: float
    upper: float
    sup_ratio: float
    extremal_ratio: float
    samples: int


@dataclass(frozen=True)
class MajorantCheck:
    holds: bool
    worst_xi: float
    worst_u: float
    worst_excess: float
    slice_error: float


# ---------------------------------------------------------------- constants


def I_n(phi: ShapeFunction, w: Weight, n: int, k_max: int | None = None) -> InResult:
    """``min_{n <= k <= k_max} int_0^tau phi(k t / n) dmu(t)``.

    The infimum over all ``k >= n`` is only approximated by the truncation
    at ``k_max``; each term is bounded by ``sup phi * TV`` (reported as
    ``tail_bound``).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k_max = 64 * n if k_max is None else int(k_max)
    if k_max < n:
        raise ValueError("k_max must be >= n")
    ref = stieltjes_integral(phi, w, tol=1e-12)
    vals = np.concatenate([_dilated_integrals(phi, w, np.arange(lo, min(lo + 64, k_max + 1)) / n)
                           for lo in range(n, k_max + 1, 64)])
    # ties within the quadrature tolerance go to the smallest k
    i = int(np.argmax(vals <= vals.min() + 1e-9))
    best, arg = float(vals.min()), n + i
    grid = np.linspace(0.0, 50.0, 5001)
    tail = float(np.max(phi(grid))) * w.total_variation
    attained = best >= ref * (1 - CONDITION12_RTOL)
    return InResult(best, arg, bool(attained), ref, k_max, tail)


def _dilated_integrals(phi, w, rs, tol=1e-10):
    """``int_0^tau phi(r t) dmu(t)`` for every ``r`` in ``rs``, refined as one batch."""
    out = np.zeros(len(rs))
    if w.density is not None:
        # the starting mesh must resolve the fastest oscillation in the batch
        initial = 16 * math.ceil(float(np.max(rs)))
        out += adaptive_simpson_batch(lambda t, j: phi(rs[j] * t) * w.density(t), 0.0, w.tau, len(rs),
                                      tol=tol, initial=initial)
    for x, m in w.atoms:
        out += m * phi(rs * x)
    return out


def sharp_constant(spec: ClassSpec, n: int | None = None) -> float:
    """``(mu(tau) - mu(0)) / int_0^tau phi dmu * |psi(n)|``."""
    n = spec.n if n is None else n
    res = spec.I_n(n)
    if not res.attained_at_n:
        warnings.warn(f"I_n is not attained at k = n for n={n}: I_n={res.value:.12g} < {res.reference:.12g}",
                      Condition12Warning, stacklevel=2)
    return spec.weight.total_variation / spec.phi_integral() * float(spec.psi.modulus(n))


def jackson_verify(f: Spectrum, spec: ClassSpec, n: int | None = None) -> JacksonReport:
    """Compute both sides of the Jackson-type inequality for ``f``."""
    n = spec.n if n is None else n
    E = best_approximation(f, n, spec.space)
    fpsi = psi_derivative(f, spec.psi)
    om = averaged_modulus(fpsi, spec.phi, spec.weight, spec.tau / n, spec.space)
    res = spec.I_n(n)
    tv = spec.weight.total_variation
    psi_n = float(spec.psi.modulus(n))
    rhs = tv / res.value * psi_n * om
    const = tv / spec.phi_integral() * psi_n
    degenerate = om == 0 and E > 0
    verdict = (E <= rhs + JACKSON_SLACK) and not degenerate
    ratio = E / rhs if rhs > 0 else (0.0 if E == 0 else math.inf)
    # extremal LHS/RHS equals I_n / int phi dmu; computed, not assumed
    key = ("extremal", n)
    if key not in spec._cache:
        spec._cache[key] = sharpness_ratio(spec, n) / (tv / res.value * psi_n)
    return JacksonReport(n, E, om, res.value, rhs, const, ratio, spec._cache[key], res.attained_at_n,
                         bool(verdict), degenerate)


def extremal_function(n: int, delta: complex = 1.0, gamma: complex = 0.0, side: int = 1) -> Spectrum:
    """``gamma + delta * exp(i*side*n*x)``."""
    if n < 1 or side not in (1, -1):
        raise ValueError("need n >= 1 and side in {+1, -1}")
    return Spectrum({0: gamma, side * n: delta})


def sharpness_ratio(spec: ClassSpec, n: int | None = None, delta: complex = 1.0, side: int = 1) -> float:
    """``E_n(f_n) / Omega_phi(f_n^psi, tau, mu, tau/n)`` for the extremal function."""
    n = spec.n if n is None else n
    fn = extremal_function(n, delta, 0.0, side)
    E = best_approximation(fn, n, spec.space)
    om = averaged_modulus(psi_derivative(fn, spec.psi), spec.phi, spec.weight, spec.tau / n, spec.space)
    return E / om


# ---------------------------------------------------------------- classes


def _u_grid(tau, points=64, extra=()):
    grid = tau * np.arange(1, points + 1) / points
    return np.unique(np.concatenate([grid, np.asarray(extra, float)]))


def _averages(f, spec, us):
    fpsi = psi_derivative(f, spec.psi)
    if not fpsi:
        return np.zeros(len(us))
    return averaged_modulus_many(fpsi, spec.phi, spec.weight, us, spec.space)


def class_membership(f: Spectrum, spec: ClassSpec, points: int = 64, tol: float = 0.0,
                     extra_u=()) -> Membership:
    """Membership test; ``margin`` is the largest excess over the bound."""
    if spec.majorant is None:
        val = _averages(f, spec, [spec.tau / spec.n])[0]
        margin = val - 1.0
    else:
        us = _u_grid(spec.tau, points, extra_u)
        vals = _averages(f, spec, us)
        margin = float(np.max(vals - spec.majorant(us)))
    return Membership(bool(margin <= tol), float(margin))


def width_value(spec: ClassSpec, n: int | None = None, N: int | None = None) -> WidthReport:
    """Closed-form lower and upper width bounds for ``N in {2n-1, 2n}``."""
    n = spec.n if n is None else n
    N = 2 * n if N is None else N
    if N not in (2 * n - 1, 2 * n):
        raise ValueError("N must be 2n-1 or 2n")
    res = spec.I_n(n)
    factor = spec.weight.total_variation * float(spec.psi.modulus(n))
    if spec.majorant is not None:
        factor *= float(spec.majorant(spec.tau / n))
    lower = factor / spec.phi_integral()
    upper = factor / res.value
    exact = lower if res.attained_at_n else None
    return WidthReport(n, N, lower, upper, exact, lower, mode=spec.mode)


def _ball_sample(rng, n, space, radius):
    """Random polynomial of order ``n`` with Orlicz norm ``radius``."""
    size = int(rng.integers(1, 2 * n + 2))
    t = random_spectrum(rng, n, support=size)
    if rng.random() < 0.5:
        # bias half the draws towards the top frequencies, where the ball is tight
        top = {k: v * 4.0 for k, v in t.coeffs.items() if abs(k) == n}
        t = t + Spectrum(top)
    nrm = space.norm(t)
    return t * (radius / nrm) if nrm > 0 else t


def verify_bernstein_lower(spec: ClassSpec, n: int | None = None, samples: int = 1000,
                           radius_scale: float = 1.0, rng=None, tol: float = 1e-6) -> BernsteinCheck:
    """Sample the sphere of radius ``R_n`` in polynomials of order ``n``; count non-members."""
    n = spec.n if n is None else n
    rng = np.random.default_rng(rng)
    radius = width_value(spec, n).R_n * radius_scale
    sub = ClassSpec(spec.space, spec.phi, spec.weight, spec.psi, n=n, majorant=spec.majorant,
                    _cache=spec._cache)
    bad, worst = 0, -math.inf
    for _ in range(samples):
        t = _ball_sample(rng, n, spec.space, radius)
        m = class_membership(t, sub, extra_u=[spec.tau / n])
        worst = max(worst, m.margin)
        if m.margin > tol:
            bad += 1
    return BernsteinCheck(bad, samples, radius, worst)


def verify_projection_upper(spec: ClassSpec, n: int | None = None, samples: int = 1000,
                            rng=None, band: int | None = None) -> ProjectionCheck:
    """Largest ``E_n`` over sampled class members, against the upper width bound.

    Members are random spectra rescaled onto the class boundary. The
    averaged modulus is positively homogeneous, so the rescaling factor is
    the smallest ratio of bound to value over the checked ``u``.
    """
    n = spec.n if n is None else n
    rng = np.random.default_rng(rng)
    band = 3 * n if band is None else band
    upper = width_value(spec, n).upper
    us = [spec.tau / n] if spec.majorant is None else _u_grid(spec.tau, 64, [spec.tau / n])
    bound = np.ones(1) if spec.majorant is None else spec.majorant(us)

    def on_boundary(f):
        vals = _averages(f, spec, us)
        ok = vals > 0
        if not ok.any():
            return None
        return f * float(np.min(bound[ok] / vals[ok]))

    sup_E = 0.0
    for _ in range(samples):
        f = random_spectrum(rng, band, support=int(rng.integers(1, 2 * band + 1)), zero_mean=True)
        g = on_boundary(f)
        if g is not None:
            sup_E = max(sup_E, best_approximation(g, n, spec.space))
    ext = on_boundary(extremal_function(n, 1.0))
    ext_E = best_approximation(ext, n, spec.space)
    sup_E = max(sup_E, ext_E)
    return ProjectionCheck(sup_E, upper, sup_E / upper, ext_E / upper, samples)


# ---------------------------------------------------------------- majorant


def _star_profile(phi: ShapeFunction, w: Weight, xis) -> np.ndarray:
    """``L(xi) = int_0^tau phi_*(xi s) dmu(s)`` for every ``xi``."""
    return np.array([stieltjes_integral(lambda s, x=x: phi_star(phi, x * np.asarray(s)), w, tol=1e-12)
                     for x in xis])


def majorant_condition(phi: ShapeFunction, w: Weight, omega: Majorant, xi_range=(0.1, 10.0),
                       u_max: float | None = None, grid=(64, 64), rtol: float = 1e-9) -> MajorantCheck:
    """Check ``Omega(u/xi) L(xi) <= Omega(u) L(1)`` on a ``xi x u`` grid.

    ``xi`` is log-spaced over ``xi_range`` and ``u`` uniform on ``(0, a]``.
    ``slice_error`` is the largest relative gap between the two sides at
    ``xi = 1``, where they must coincide.
    """
    a = phi.monotone_end
    if w.tau > a:
        raise ValueError("tau must not exceed the monotone end a")
    u_max = a if u_max is None else u_max
    xis = np.geomspace(xi_range[0], xi_range[1], grid[0])
    us = u_max * np.arange(1, grid[1] + 1) / grid[1]
    L = _star_profile(phi, w, xis)
    L1 = stieltjes_integral(phi, w, tol=1e-12)
    lhs = omega(us[None, :] / xis[:, None]) * L[:, None]
    rhs = omega(us)[None, :] * L1
    excess = (lhs - rhs) / np.maximum(rhs, 1e-300)
    i, j = np.unravel_index(np.argmax(excess), excess.shape)
    slice_lhs = omega(us) * _star_profile(phi, w, [1.0])[0]
    slice_error = float(np.max(np.abs(slice_lhs - omega(us) * L1) / np.maximum(omega(us) * L1, 1e-300)))
    return MajorantCheck(bool(excess[i, j] <= rtol), float(xis[i]), float(us[j]), float(excess[i, j]),
                         slice_error)


def critical_exponent(phi: ShapeFunction, w: Weight, step: float = 1e-6) -> float:
    """Exponent ``r`` for which ``xi = 1`` is stationary in the power-majorant condition.

    For ``Omega(u) = u**r`` the condition reads ``xi**(-r) L(xi) <= L(1)``;
    equality at ``xi = 1`` forces ``r = L'(1) / L(1)`` with
    ``L'(1) = int_0^tau s phi_*'(s) dmu(s)``. The derivative is the mean of
    second-order one-sided differences of ``phi_*``, which stays second-order
    where ``phi_*`` is only C^1 (at ``a``); differencing ``L`` itself does not.
    """

    def s_dphi(s):
        s = np.asarray(s, float)
        d = step * np.maximum(1.0, s)
        f = lambda x: phi_star(phi, x)
        f0 = f(s)
        right = -3 * f0 + 4 * f(s + d) - f(s + 2 * d)
        left = 3 * f0 - 4 * f(s - d) + f(s - 2 * d)
        return s * (right + left) / (4 * d)

    return stieltjes_integral(s_dphi, w, tol=1e-12) / stieltjes_integral(phi, w, tol=1e-12)
