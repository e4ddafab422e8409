from __future__ import annotations

import numpy as np


def bisect_increasing(func, lo, hi, iters=80, fprime=None, newton_steps=3):
    """Vectorised bisection for ``func(x) = 0`` with ``func(lo) < 0 < func(hi)``.

    ``func`` must accept and return arrays.  Optional Newton steps polish the
    result; a step leaving the final bracket is rejected.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        neg = func(mid) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
        if np.all(hi - lo <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(hi))):
            break
    x = 0.5 * (lo + hi)
    if fprime is not None:
        for _ in range(newton_steps):
            d = fprime(x)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = func(x) / d
            cand = x - step
            ok = np.isfinite(cand) & (cand >= lo - 1e-12 * np.abs(lo)) & (cand <= hi + 1e-12 * np.abs(hi))
            x = np.where(ok, cand, x)
    return x
