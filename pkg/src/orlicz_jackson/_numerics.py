"""Small one-dimensional solvers shared by the norm and modulus code.

Everything here works on plain floats or numpy arrays; nothing knows about
Orlicz functions or spectra.
"""

from __future__ import annotations

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


EPS = np.finfo(float).eps
SQRT2 = np.sqrt(2.0)


class IntegrationError(ArithmeticError):
    """Raised when an integrand produces a non-finite sample."""


def golden_max(f, lo, hi, rtol=1e-13, maxiter=200):
    """Maximize a unimodal scalar function on ``[lo, hi]``.

    ``-inf`` values are allowed and are treated as lying to the right of
    the maximizer (the usual shape of ``u*v - M(u)`` when ``M`` has a
    bounded domain).

    Returns
    -------
    (x, fx) : tuple of float
    """
    a, b = float(lo), float(hi)
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(maxiter):
        if b - a <= rtol * max(1.0, abs(a), abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
    fa, fb = f(a), f(b)
    best = max(((x1, f1), (x2, f2), (a, fa), (b, fb)), key=lambda p: p[1])
    return best


def golden_max_vec(f, lo, hi, iters=40):
    """Vectorized golden-section maximization over independent brackets.

    ``f`` maps an array of abscissae to an array of values of the same shape.
    Each bracket ``[lo[i], hi[i]]`` is shrunk for a fixed number of
    iterations; the best point seen in each bracket is returned.
    """
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        right = f1 < f2
        a = np.where(right, x1, a)
        b = np.where(right, b, x2)
        x_new = np.where(right, a + GOLDEN * (b - a), b - GOLDEN * (b - a))
        f_new = f(x_new)
        x1, f1, x2, f2 = (np.where(right, x2, x_new), np.where(right, f2, f_new),
                          np.where(right, x_new, x1), np.where(right, f_new, f1))
    pick = f1 >= f2
    return np.where(pick, x1, x2), np.where(pick, f1, f2)


def maximize_concave(obj, horizon=1e6, start=1.0, rtol=1e-13):
    """Maximize a concave function of ``u >= 0`` with an expanding bracket.

    Returns ``(u, value)``; ``value`` is ``+inf`` when the objective is still
    increasing at ``horizon``.
    """
    f0 = obj(0.0)
    hi = float(start)
    prev = obj(hi / 2.0)
    cur = obj(hi)
    while cur > prev:
        if hi >= horizon:
            return math.inf, math.inf
        hi *= 2.0
        prev, cur = cur, obj(hi)
    u, fu = golden_max(obj, 0.0, hi, rtol=rtol)
    if f0 >= fu:
        return 0.0, f0
    return u, fu


def bisect_decreasing(g, target, lo, hi, rtol=1e-14, maxiter=400):
    """Geometric bisection for a nonincreasing ``g`` on ``(0, inf)``.

    Requires ``g(lo) > target >= g(hi)``; returns the final ``(lo, hi)``.
    """
    for _ in range(maxiter):
        if hi / lo - 1.0 <= rtol:
            break
        mid = math.sqrt(lo * hi)
        if g(mid) > target:
            lo = mid
        else:
            hi = mid
    return lo, hi


def adaptive_simpson(g, a, b, tol=1e-9, initial=16, max_depth=40):
    """Adaptive Simpson quadrature of a vectorized integrand on ``[a, b]``.

    Intervals are refined breadth-first so that every level is a single
    vectorized call of ``g``.  The tolerance is absolute; each bisection
    gives the halves ``tol / sqrt(2)``, which keeps integrable cusps such as
    ``|t|**0.5`` from driving refinement to the depth cap.
    """
    return float(adaptive_simpson_batch(lambda x, j: g(x), a, b, 1, tol=tol,
                                        initial=initial, max_depth=max_depth)[0])


def adaptive_simpson_batch(g, a, b, m, tol=1e-9, initial=16, max_depth=40, max_intervals=4_000_000):
    """``m`` integrals over the same ``[a, b]`` refined together.

    ``g(x, j)`` evaluates integrand number ``j[i]`` at ``x[i]``. ``tol`` is
    either a scalar or one absolute tolerance per integral.
    """
    out = np.zeros(m)
    if b <= a:
        return out
    edges = np.linspace(a, b, initial + 1)
    lo = np.tile(edges[:-1], m)
    hi = np.tile(edges[1:], m)
    j = np.repeat(np.arange(m), initial)
    tol_i = np.broadcast_to(np.asarray(tol, float), (m,))[j] / initial
    ev = lambda x: _checked(lambda y: g(y, j), x)
    fl, fh = ev(lo), ev(hi)
    mid = 0.5 * (lo + hi)
    fm = ev(mid)
    whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh)
    for depth in range(max_depth + 1):
        ml, mr = 0.5 * (lo + mid), 0.5 * (mid + hi)
        fml, fmr = ev(ml), ev(mr)
        left = (mid - lo) / 6.0 * (fl + 4.0 * fml + fm)
        right = (hi - mid) / 6.0 * (fm + 4.0 * fmr + fh)
        err = left + right - whole
        # below a few ulps of the local value the estimate is round-off
        done = np.abs(err) <= np.maximum(15.0 * tol_i, 64 * EPS * (np.abs(left) + np.abs(right)))
        if depth == max_depth or 2 * np.count_nonzero(~done) > max_intervals:
            done[:] = True
        np.add.at(out, j[done], (left + right + err / 15.0)[done])
        keep = ~done
        if not keep.any():
            break
        lo_k, mid_k, hi_k = lo[keep], mid[keep], hi[keep]
        lo = np.concatenate([lo_k, mid_k])
        hi = np.concatenate([mid_k, hi_k])
        mid = np.concatenate([ml[keep], mr[keep]])
        fl = np.concatenate([fl[keep], fm[keep]])
        fh = np.concatenate([fm[keep], fh[keep]])
        fm = np.concatenate([fml[keep], fmr[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        tol_i = np.concatenate([tol_i[keep], tol_i[keep]]) / SQRT2
        j = np.concatenate([j[keep], j[keep]])
    return out


def _checked(g, x):
    y = np.asarray(g(x), dtype=float)
    if y.shape != np.shape(x):
        y = np.broadcast_to(y, np.shape(x)).astype(float)
    if not np.all(np.isfinite(y)):
        bad = np.asarray(x)[~np.isfinite(y)]
        raise IntegrationError(f"non-finite integrand sample at t={bad[0]!r}")
    return y
