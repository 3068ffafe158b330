"""Bracketed scalar root finding: bisection and a bisection/secant hybrid."""

from __future__ import annotations

import math
from typing import Callable

from .errors import NoConvergence, NoInteriorEquilibrium


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Plain bisection on ``[lo, hi]``.

    Stops when ``|f(x)| <= tol`` or the bracket collapses to adjacent floats.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoInteriorEquilibrium(f"no sign change on [{lo!r}, {hi!r}]")
    for it in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= tol or mid in (lo, hi):
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    raise NoConvergence(
        f"bisection exhausted {max_iter} iterations", residual=abs(f_mid), iterations=max_iter
    )


def hybrid_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
    bracket_width: float = 1e-3,
) -> float:
    """Bisect until the bracket is narrower than ``bracket_width``, then polish
    with secant steps that are kept inside the bracket.

    A secant step that leaves the bracket, or fails to shrink it, falls back
    to bisection, so the method never loses the root.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoInteriorEquilibrium(f"no sign change on [{lo!r}, {hi!r}]")

    f_x = float("nan")
    for it in range(max_iter):
        polishing = hi - lo <= bracket_width
        if polishing:
            # secant through the bracket ends (regula falsi form keeps it inside)
            x = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            if not (lo < x < hi):
                x = 0.5 * (lo + hi)
        else:
            x = 0.5 * (lo + hi)
        f_x = f(x)
        if abs(f_x) <= tol or x in (lo, hi):
            return x
        if math.copysign(1.0, f_x) == math.copysign(1.0, f_lo):
            lo, f_lo = x, f_x
            if polishing:
                # Illinois weighting so a stale endpoint cannot stall the secant
                f_hi *= 0.5
        else:
            hi, f_hi = x, f_x
            if polishing:
                f_lo *= 0.5
        if hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            return x
    raise NoConvergence(
        f"hybrid root finder exhausted {max_iter} iterations",
        residual=abs(f_x),
        iterations=max_iter,
    )
