"""Small deterministic numerical helpers shared across modules."""
from __future__ import annotations

import math
from typing import Callable


def bisect(f: Callable[[float], float], lo: float, hi: float, rtol: float = 1e-12, maxiter: int = 200) -> float:
    """Root of ``f`` in the bracket [lo, hi] by plain bisection.

    ``f(lo)`` and ``f(hi)`` must differ in sign (or one of them be zero).
    Stops when the bracket is narrower than ``rtol * max(|lo|, |hi|, 1e-300)``
    or collapses to adjacent floats.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= rtol * max(abs(lo), abs(hi), 1e-300):
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sinc2(x):
    """sin(x)^2 / x^2 with the removable singularity filled in (numpy-aware)."""
    import numpy as np

    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0.0
    out[nz] = (np.sin(x[nz]) / x[nz]) ** 2
    return out if out.ndim else float(out)


def is_close_to_integer(x: float, tol: float) -> bool:
    return abs(x - round(x)) <= tol and math.isfinite(x)
