"""Finitely supported Fourier spectra and psi-multiplier calculus.

A 2*pi-periodic function is represented by its Fourier coefficients
``k -> c_k`` (``f(x) = sum c_k exp(ikx)``); only finitely many are nonzero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

__all__ = [
    "Spectrum", "PsiMultiplier", "AliasingError", "PsiZeroError",
    "coefficients_from_samples", "partial_sum", "best_approximation",
    "psi_derivative", "psi_integral", "random_spectrum",
]


class AliasingError(ValueError):
    pass


class PsiZeroError(ZeroDivisionError):
    pass


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sparse, immutable map ``k -> complex`` coefficient.

    Exact zeros are dropped on construction; nothing else is thresholded.
    """

    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): complex(v) for k, v in dict(self.coeffs).items() if complex(v) != 0}
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items()))))

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    @property
    def ks(self) -> np.ndarray:
        return np.fromiter(self.coeffs.keys(), dtype=int, count=len(self.coeffs))

    @property
    def values(self) -> np.ndarray:
        return np.fromiter(self.coeffs.values(), dtype=complex, count=len(self.coeffs))

    def __getitem__(self, k):
        return self.coeffs.get(int(k), 0j)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Spectrum) and dict(self.coeffs) == dict(other.coeffs)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v:.6g}" for k, v in self.coeffs.items())
        return f"Spectrum({{{inner}}})"

    def __add__(self, other: "Spectrum") -> "Spectrum":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0j) + v
        return Spectrum(out)

    def __neg__(self):
        return Spectrum({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return Spectrum({k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Spectrum({k: v / scalar for k, v in self.coeffs.items()})

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "Spectrum":
        """Multiply every coefficient by ``fn(k)`` (vectorized over ``k``)."""
        if not self.coeffs:
            return self
        return Spectrum(dict(zip(self.ks.tolist(), self.values * np.asarray(fn(self.ks)))))

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        return np.exp(1j * np.multiply.outer(x, self.ks)) @ self.values

    # serialization: list of {k, re, im} records

    def to_records(self):
        return [{"k": k, "re": v.real, "im": v.imag} for k, v in self.coeffs.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, records) -> "Spectrum":
        out = {}
        for r in records:
            k = int(r["k"])
            out[k] = out.get(k, 0j) + complex(float(r.get("re", 0.0)), float(r.get("im", 0.0)))
        return cls(out)

    @classmethod
    def from_json(cls, text_or_path) -> "Spectrum":
        """Parse an inline JSON array, or read it from a file path."""
        text = str(text_or_path)
        if not text.lstrip().startswith("["):
            text = Path(text).read_text()
        return cls.from_records(json.loads(text))


@dataclass(frozen=True, eq=False)
class PsiMultiplier:
    """Sequence ``k -> psi(k)``; the ``k = 0`` mode is always dropped."""

    func: Callable[[np.ndarray], np.ndarray]
    name: str = "psi"

    zero_mode_policy = "drop k=0"

    def __call__(self, k):
        k = np.asarray(k)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.func(k), dtype=complex)

    def modulus(self, k):
        return np.abs(self(k))

    def in_Psi(self, kmax: int = 10_000, rtol: float = 1e-12) -> bool:
        """Check ``|psi(k)| = |psi(-k)| >= |psi(k+1)|`` for ``1 <= k <= kmax``."""
        k = np.arange(1, kmax + 2)
        pos, neg = self.modulus(k), self.modulus(-k)
        if not np.allclose(pos, neg, rtol=rtol, atol=0):
            return False
        return bool(np.all(pos[1:] <= pos[:-1] * (1 + rtol)))


def coefficients_from_samples(samples, degree: int) -> Spectrum:
    """Fourier coefficients ``|k| <= degree`` from samples on a uniform grid of ``[0, 2*pi)``."""
    samples = np.asarray(samples, dtype=complex)
    m = samples.size
    if m < 2 * degree + 1:
        raise AliasingError(f"{m} samples cannot resolve degree {degree}")
    fft = np.fft.fft(samples) / m
    out = {}
    for k in range(-degree, degree + 1):
        v = fft[k % m]
        # round-off from the transform, not a truncation of real content
        if abs(v) > 1e-13 * max(1.0, np.abs(samples).max()):
            out[k] = v
    return Spectrum(out)


def partial_sum(f: Spectrum, n: int) -> Spectrum:
    """``S_{n-1}(f)``: keep the coefficients with ``|k| <= n-1``."""
    return Spectrum({k: v for k, v in f.coeffs.items() if abs(k) <= n - 1})


def tail(f: Spectrum, n: int) -> Spectrum:
    return Spectrum({k: v for k, v in f.coeffs.items() if abs(k) >= n})


def best_approximation(f: Spectrum, n: int, space) -> float:
    """``E_n(f)``: distance from ``f`` to polynomials of order ``n-1``.

    Equal to the Orlicz norm of the tail ``{c_k : |k| >= n}``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(space.norm(tail(f, n)))


def psi_derivative(f: Spectrum, psi: PsiMultiplier) -> Spectrum:
    """Coefficients ``c_k / psi(k)`` for ``k != 0``; the constant term is dropped."""
    g = Spectrum({k: v for k, v in f.coeffs.items() if k != 0})
    if not g:
        return g
    den = psi(g.ks)
    zero = den == 0
    if np.any(zero):
        raise PsiZeroError(f"psi({int(g.ks[zero][0])}) = 0 on the support")
    return Spectrum(dict(zip(g.ks.tolist(), g.values / den)))


def psi_integral(f: Spectrum, psi: PsiMultiplier) -> Spectrum:
    """Coefficients ``psi(k) * c_k`` for ``k != 0``."""
    g = Spectrum({k: v for k, v in f.coeffs.items() if k != 0})
    return g.map(psi)


def random_spectrum(rng: np.random.Generator, degree: int, support: int | None = None,
                    zero_mean: bool = False, min_abs: int = 0, scale: float = 1.0) -> Spectrum:
    """Random complex spectrum with support inside ``min_abs <= |k| <= degree``."""
    pool = [k for k in range(-degree, degree + 1) if abs(k) >= min_abs and not (zero_mean and k == 0)]
    size = len(pool) if support is None else min(support, len(pool))
    ks = rng.choice(pool, size=size, replace=False)
    vals = (rng.normal(size=size) + 1j * rng.normal(size=size)) * scale
    return Spectrum(dict(zip(ks.tolist(), vals)))
