"""Generalized differences, moduli of smoothness and their weighted averages.

The generalized difference of ``f`` with step ``h`` and shape ``phi`` is the
multiplier ``c_k -> phi(k*h) * c_k``. The modulus ``omega(f, t)`` is the sup of
its norm over ``|h| <= t``; :class:`ModulusProfile` computes that sup for all
``t`` in one pass, which is what the averaged modulus needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._numerics import IntegrationError, adaptive_simpson, adaptive_simpson_batch, golden_max_vec
from .spectral import Spectrum

__all__ = [
    "ShapeFunction", "Weight", "Majorant", "UnsupportedNormError",
    "stieltjes_integral", "generalized_difference", "alpha_multiplier",
    "ModulusProfile", "modulus", "averaged_modulus", "averaged_modulus_many", "phi_star",
    "s_averaged_modulus", "shape_from_config", "weight_from_config",
]


class UnsupportedNormError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ShapeFunction:
    """An even, bounded, continuous ``phi`` with ``phi(0) = 0``.

    ``monotone_end`` is the right end ``a`` of the interval ``[0, a]`` on which
    ``phi`` is non-decreasing (``inf`` if it never decreases). ``sup_value``
    is ``phi(a)`` when that is the global supremum.
    """

    func: Callable[[np.ndarray], np.ndarray]
    monotone_end: float = math.inf
    name: str = "phi"
    sup_value: float | None = None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.asarray(self.func(np.abs(t)), dtype=float)
        return out if out.ndim else float(out)

    def star(self, t):
        """Truncated shape: ``phi(t)`` up to ``a`` and ``phi(a)`` beyond."""
        return phi_star(self, t)

    def validate(self, t_max: float = 20.0, points: int = 4001) -> list[str]:
        grid = np.linspace(0.0, t_max, points)
        problems = []
        raw = np.asarray(self.func(grid), float)
        if not np.all(np.isfinite(raw)):
            problems.append("unbounded on sampled range")
            return problems
        mirror = np.asarray(self.func(-grid), float) if _accepts_negative(self.func) else raw
        if np.max(np.abs(mirror - raw)) > 1e-12:
            problems.append("not even")
        if abs(float(self(0.0))) > 1e-12:
            problems.append("phi(0) != 0")
        if np.any(raw < -1e-15):
            problems.append("negative values")
        a = min(self.monotone_end, t_max)
        mono = grid <= a
        if np.any(np.diff(raw[mono]) < -1e-12):
            problems.append("not non-decreasing on [0, a]")
        zero = np.abs(raw[1:]) < 1e-14
        if np.any(zero[1:] & zero[:-1]):
            problems.append("vanishes on an interval")
        fine = np.asarray(self.func(np.linspace(0.0, t_max, 4 * points - 3)), float)
        # a jump keeps its size under 4x refinement; a Hoelder-beta cusp shrinks by 4**-beta
        if np.max(np.abs(np.diff(fine))) > 0.9 * np.max(np.abs(np.diff(raw))) + 1e-9:
            problems.append("jump detected under refinement")
        if self.sup_value is not None and math.isfinite(self.monotone_end):
            if np.max(raw) > self.sup_value * (1 + 1e-12) + 1e-12:
                problems.append("phi(a) is not the supremum")
        return problems


def _accepts_negative(func):
    try:
        func(np.array([-1.0]))
        return True
    except Exception:
        return False


@dataclass(frozen=True, eq=False)
class Weight:
    """A weight on ``[0, tau]``: absolutely continuous density plus atoms."""

    tau: float
    density: Callable[[np.ndarray], np.ndarray] | None = None
    atoms: Sequence[tuple[float, float]] = ()
    name: str = "mu"
    total_variation: float = field(init=False)

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        for x, m in atoms:
            if not (0.0 <= x <= self.tau) or m <= 0:
                raise ValueError(f"bad atom ({x}, {m})")
        object.__setattr__(self, "atoms", atoms)
        mass = sum(m for _, m in atoms)
        if self.density is not None:
            probe = np.asarray(self.density(np.linspace(0.0, self.tau, 2001)), float)
            if np.any(probe < -1e-12):
                raise ValueError("weight density is negative: mu would decrease")
            mass += adaptive_simpson(self.density, 0.0, self.tau, tol=1e-13)
        if not mass > 0:
            raise ValueError("weight must be non-constant (positive total variation)")
        object.__setattr__(self, "total_variation", mass)

    def integrate(self, g, tol: float = 1e-9) -> float:
        return stieltjes_integral(g, self, tol=tol)


@dataclass(frozen=True, eq=False)
class Majorant:
    func: Callable[[np.ndarray], np.ndarray]
    name: str = "Omega"

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.asarray(self.func(u), dtype=float)
        return out if out.ndim else float(out)

    def validate(self, u_max: float = 10.0, points: int = 2001) -> list[str]:
        grid = np.linspace(0.0, u_max, points)
        vals = np.asarray(self(grid), float)
        problems = []
        if abs(vals[0]) > 1e-12:
            problems.append("Omega(0) != 0")
        if not np.all(np.isfinite(vals)):
            problems.append("not finite")
        elif np.any(np.diff(vals) <= 0):
            problems.append("not strictly increasing")
        return problems


def stieltjes_integral(g, w: Weight, tol: float = 1e-9, initial: int = 16) -> float:
    """``int_0^tau g dmu`` = density part by adaptive Simpson plus atoms.

    Raise ``initial`` for integrands oscillating faster than the default
    16-interval starting mesh can see.
    """
    total = 0.0
    if w.density is not None:
        total += adaptive_simpson(lambda t: np.asarray(g(t), float) * np.asarray(w.density(t), float),
                                  0.0, w.tau, tol=tol, initial=initial)
    if w.atoms:
        locs = np.array([x for x, _ in w.atoms])
        masses = np.array([m for _, m in w.atoms])
        vals = np.asarray(g(locs), float)
        if not np.all(np.isfinite(vals)):
            raise IntegrationError("non-finite integrand at an atom")
        total += float(vals @ masses)
    return total


def alpha_multiplier(alpha: float, k, h):
    """``|1 - exp(-ikh)|**alpha = 2**(alpha/2) * (1 - cos(kh))**(alpha/2)``."""
    x = np.asarray(k, float) * np.asarray(h, float)
    out = 2.0**alpha * np.abs(np.sin(x / 2)) ** alpha
    return out if np.ndim(out) else float(out)


def generalized_difference(f: Spectrum, phi: ShapeFunction, h: float) -> Spectrum:
    return f.map(lambda k: phi(k * float(h)))


def phi_star(phi: ShapeFunction, t):
    a = phi.monotone_end
    if not math.isfinite(a):
        raise ValueError("phi_star needs a finite monotone end a")
    t = np.minimum(np.abs(np.asarray(t, dtype=float)), a)
    out = np.asarray(phi(t), float)
    return out if out.ndim else float(out)


class ModulusProfile:
    """``t -> omega_phi(f, t)`` on ``[0, t_max]`` for a fixed spectrum.

    With ``g(h)`` the norm of the ``h``-difference, ``omega(t)`` is the
    largest of ``g(t)`` and every local maximum of ``g`` located in
    ``[0, t]``. Local maxima are located on a uniform grid and polished by
    golden section, so ``omega`` is exact to solver precision once evaluated.
    """

    def __init__(self, f: Spectrum, phi: ShapeFunction, space, t_max: float, density: int = 512):
        self.f, self.phi, self.space = f, phi, space
        self.t_max = float(t_max)
        self.ks = f.ks
        self.absvals = np.abs(f.values)
        if self.absvals.size == 0 or self.t_max == 0:
            self.grid = np.zeros(1)
            self.grid_cummax = np.zeros(1)
            self.peak_pos = np.zeros(0)
            self.peak_cummax = np.zeros(0)
            return
        deg = max(1, f.degree)
        points = max(density, int(math.ceil(32 * deg * self.t_max / math.pi))) + 1
        self.grid = np.linspace(0.0, self.t_max, points)
        gv = self.g(self.grid)
        self.grid_cummax = np.maximum.accumulate(gv)
        inner = np.flatnonzero((gv[1:-1] >= gv[:-2]) & (gv[1:-1] >= gv[2:]) & (gv[1:-1] > 0)) + 1
        if inner.size:
            pos, val = golden_max_vec(self.g, self.grid[inner - 1], self.grid[inner + 1])
            order = np.argsort(pos)
            pos, val = pos[order], np.maximum(val[order], gv[inner][order])
        else:
            pos = val = np.zeros(0)
        self.peak_pos = pos
        self.peak_cummax = np.maximum.accumulate(val) if val.size else val

    def g(self, h):
        """Norm of the generalized difference for every step in ``h``."""
        h = np.asarray(h, float)
        if self.absvals.size == 0:
            return np.zeros_like(h)
        mult = np.asarray(self.phi(np.multiply.outer(h.ravel(), self.ks)), float)
        vals = self.space.norm_rows(mult * self.absvals, self.ks)
        return np.asarray(vals, float).reshape(h.shape)

    def __call__(self, t):
        t = np.asarray(t, float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if np.any(t < 0) or np.any(t > self.t_max * (1 + 1e-12)):
            raise ValueError("profile queried outside [0, t_max]")
        out = self.g(t)
        gi = np.searchsorted(self.grid, t, side="right") - 1
        out = np.maximum(out, self.grid_cummax[np.clip(gi, 0, None)])
        if self.peak_pos.size:
            pi = np.searchsorted(self.peak_pos, t, side="right") - 1
            out = np.where(pi >= 0, np.maximum(out, self.peak_cummax[np.clip(pi, 0, None)]), out)
        return float(out[0]) if scalar else out


def modulus(f: Spectrum, phi: ShapeFunction, t: float, space, density: int = 512) -> float:
    """``omega_phi(f, t) = sup_{|h| <= t} ||Delta_h^phi f||``."""
    t = abs(float(t))
    if t == 0 or not f:
        return 0.0
    if len(f) == 1 and f.degree * t <= phi.monotone_end:
        # single harmonic, shape monotone over the scanned range: sup at h = t
        return float(space.norm(generalized_difference(f, phi, t)))
    return ModulusProfile(f, phi, space, t, density)(t)


def averaged_modulus(f: Spectrum, phi: ShapeFunction, w: Weight, u: float, space,
                     tol: float = 1e-9, profile: ModulusProfile | None = None) -> float:
    """Weighted average of ``omega_phi(f, t)`` over ``t in [0, u]``.

    Computed after the change of variables ``t = s u / tau`` as
    ``(1/TV) int_0^tau omega(s u / tau) dmu(s)``.
    """
    if not u > 0:
        raise ValueError("u must be positive")
    if not f:
        return 0.0
    prof = profile if profile is not None else ModulusProfile(f, phi, space, u)
    scale = u / w.tau
    top = prof(u)
    # relative tolerance: refinement, hence the result, is equivariant under f -> c f
    val = stieltjes_integral(lambda s: prof(np.asarray(s) * scale), w, tol=tol * top)
    return val / w.total_variation


def averaged_modulus_many(f: Spectrum, phi: ShapeFunction, w: Weight, us, space,
                          tol: float = 1e-9, profile: ModulusProfile | None = None) -> np.ndarray:
    """:func:`averaged_modulus` at several ``u`` at once (one shared profile)."""
    us = np.asarray(us, float)
    if np.any(us <= 0):
        raise ValueError("u must be positive")
    if not f:
        return np.zeros_like(us)
    prof = profile if profile is not None else ModulusProfile(f, phi, space, float(us.max()))
    scales = us / w.tau
    tops = np.atleast_1d(prof(us))
    total = np.zeros(us.size)
    if w.density is not None:
        total += adaptive_simpson_batch(lambda s, j: prof(s * scales[j]) * w.density(s), 0.0, w.tau, us.size,
                                        tol=tol * tops)
    for x, m in w.atoms:
        vals = np.atleast_1d(prof(x * scales))
        if not np.all(np.isfinite(vals)):
            raise IntegrationError("non-finite integrand at an atom")
        total += m * vals
    return total / w.total_variation


def s_averaged_modulus(f: Spectrum, phi: ShapeFunction, w: Weight, u: float, s: float, space,
                       tol: float = 1e-9) -> float:
    """Power mean of order ``s`` of the modulus; only for ``l_p`` spaces."""
    if getattr(space.family, "lp", None) is None:
        raise UnsupportedNormError("s-averaged moduli are only defined for the S^p presets")
    if s < 1:
        raise ValueError("s must be >= 1")
    if not f:
        return 0.0
    prof = ModulusProfile(f, phi, space, u)
    scale = u / w.tau
    top = prof(u)
    val = stieltjes_integral(lambda x: prof(np.asarray(x) * scale) ** s, w, tol=tol * top**s)
    return (val / w.total_variation) ** (1.0 / s)


# ---------------------------------------------------------------- config


def shape_from_config(cfg) -> ShapeFunction:
    kind = cfg.get("kind")
    if kind == "alpha":
        from .presets import phi_alpha
        return phi_alpha(float(cfg["alpha"]))
    if kind == "saturating":
        from .presets import phi_saturating
        return phi_saturating()
    if kind == "custom-table":
        pts = sorted((abs(float(t)), float(v)) for t, v in cfg["table"])
        if pts[0][0] != 0.0:
            pts.insert(0, (0.0, 0.0))
        ts = np.array([p[0] for p in pts])
        vs = np.array([p[1] for p in pts])
        a = float(cfg.get("monotone_end", math.inf))
        return ShapeFunction(lambda t: np.interp(np.abs(t), ts, vs), monotone_end=a, name="custom-table",
                             sup_value=float(vs.max()))
    raise ValueError(f"unknown shape kind {kind!r}")


def weight_from_config(cfg) -> Weight:
    kind = cfg.get("kind")
    tau = float(cfg.get("tau", math.pi))
    if kind == "lebesgue":
        return Weight(tau, density=np.ones_like, name="lebesgue")
    if kind == "one-minus-cos":
        return Weight(tau, density=np.sin, name="one-minus-cos")
    if kind == "atoms":
        return Weight(tau, atoms=[tuple(a) for a in cfg["atoms"]], name="atoms")
    raise ValueError(f"unknown weight kind {kind!r}")
