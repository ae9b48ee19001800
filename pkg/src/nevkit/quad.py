"""Batched one-dimensional quadrature and root/maximum location helpers.

All routines take vectorized callables: ``f`` maps a float ndarray to a float
ndarray of the same shape.  Work proceeds in whole generations of panels so
the callable is hit a few times with large batches instead of thousands of
times with scalars.
"""
from __future__ import annotations

import numpy as np

from .errors import ToleranceNotReached

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def adaptive_simpson(f, a: float, b: float, tol: float, *,
                     min_depth: int = 0, max_depth: int = 50,
                     max_panels: int = 200_000) -> float:
    """Integrate ``f`` over [a, b] to absolute tolerance ``tol``.

    Classic adaptive Simpson with Richardson correction, run breadth-first.
    ``min_depth`` forces that many halvings before a panel may self-accept,
    which is the guard against narrow features aliasing past the five-point
    error estimate.  Panels at ``max_depth`` are accepted as-is; if their
    combined error estimate overruns the budget, ToleranceNotReached is
    raised.
    """
    a, b = float(a), float(b)
    if not b > a:
        return 0.0
    xs = np.array([a, 0.5 * (a + b), b])
    fa, fm, fb = (float(v) for v in f(xs))
    if not np.isfinite([fa, fm, fb]).all():
        raise ToleranceNotReached(f"non-finite integrand on [{a}, {b}]")

    span = b - a
    left = np.array([a])
    h = np.array([span])
    va = np.array([fa])
    vm = np.array([fm])
    vb = np.array([fb])
    coarse = h / 6.0 * (va + 4.0 * vm + vb)

    total = 0.0
    forced_err = 0.0
    panels_done = 1

    for depth in range(max_depth + 1):
        lm = left + 0.25 * h
        rm = left + 0.75 * h
        fvals = f(np.concatenate([lm, rm]))
        flm = np.asarray(fvals[: lm.size], dtype=float)
        frm = np.asarray(fvals[lm.size:], dtype=float)
        s_left = h / 12.0 * (va + 4.0 * flm + vm)
        s_right = h / 12.0 * (vm + 4.0 * frm + vb)
        delta = (s_left + s_right - coarse) / 15.0
        bad = ~(np.isfinite(s_left) & np.isfinite(s_right))
        if bad.any():
            raise ToleranceNotReached("non-finite integrand during refinement")

        budget = tol * (h / span)
        done = ((np.abs(delta) <= budget) & (depth >= min_depth)) | (depth == max_depth)
        total += float(np.sum(s_left[done] + s_right[done] + delta[done]))
        at_cap = done & (np.abs(delta) > budget)
        forced_err += float(np.sum(np.abs(delta[at_cap])))

        keep = ~done
        if not keep.any():
            break
        panels_done += 2 * int(np.count_nonzero(keep))
        if panels_done > max_panels:
            raise ToleranceNotReached(
                f"panel budget exhausted ({panels_done} > {max_panels})")
        half = 0.5 * h[keep]
        left = np.concatenate([left[keep], left[keep] + half])
        h = np.concatenate([half, half])
        va = np.concatenate([va[keep], vm[keep]])
        vb = np.concatenate([vm[keep], vb[keep]])
        vm = np.concatenate([flm[keep], frm[keep]])
        coarse = np.concatenate([s_left[keep], s_right[keep]])

    if forced_err > max(tol, 1e-15):
        raise ToleranceNotReached(
            f"residual error estimate {forced_err:.3e} above budget {tol:.3e}")
    return total


def bisect_sign_changes(f, lo: np.ndarray, hi: np.ndarray, flo: np.ndarray,
                        iters: int = 70) -> np.ndarray:
    """Vectorized bisection; each (lo[i], hi[i]) must bracket a sign change."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    sign_lo = np.sign(flo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        same = np.sign(fm) == sign_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def golden_max(f, lo: np.ndarray, hi: np.ndarray, iters: int = 45) -> np.ndarray:
    """Vectorized golden-section maximization over the brackets [lo, hi].

    Returns the maximum of the endpoint and probe values seen; unimodality is
    not required for correctness of that lower envelope, only for sharpness.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    best = np.maximum(f(lo), f(hi))
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(iters):
        best = np.maximum(best, np.maximum(f1, f2))
        take_left = f1 >= f2
        hi = np.where(take_left, x2, hi)
        lo = np.where(take_left, lo, x1)
        x1 = hi - _INVPHI * (hi - lo)
        x2 = lo + _INVPHI * (hi - lo)
        f1 = f(x1)
        f2 = f(x2)
    return np.maximum(best, np.maximum(f1, f2))
