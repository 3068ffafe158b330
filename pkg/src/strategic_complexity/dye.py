"""Two-message baseline: disclose or stay silent, with an exogenous chance
that the manager cannot disclose."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError, NoConvergence
from .rootfind import bisect
from .valuation import UNIFORM01, ValuationDistribution

BRACKET_EPS = 1e-12


@dataclass(frozen=True)
class DyeParams:
    p_uninformed: float
    dist: ValuationDistribution = field(default=UNIFORM01)

    def __post_init__(self):
        if not (0.0 < self.p_uninformed < 1.0):
            raise ConfigError(f"p_uninformed must lie in (0, 1), got {self.p_uninformed!r}")


@dataclass(frozen=True)
class DyeEquilibrium:
    threshold: float
    nondisclosure_price: float
    residual: float


def silence_price(params: DyeParams, t: float) -> float:
    """Bayes price of the silent pool when informed managers below ``t`` hide."""
    p, dist = params.p_uninformed, params.dist
    lo = dist.support[0]
    informed_silent = (1.0 - p) * dist.interval_mass(lo, t)
    num = p * dist.mean + informed_silent * dist.truncated_mean(lo, t)
    return num / (p + informed_silent)


def dye_residual(params: DyeParams, t: float) -> float:
    return t - silence_price(params, t)


def dye_closed_form(p_uninformed: float) -> float:
    """Threshold for the uniform prior: sqrt(p) / (1 + sqrt(p))."""
    s = math.sqrt(p_uninformed)
    return s / (1.0 + s)


def solve_dye(params: DyeParams, tol: float = 1e-10, max_iter: int = 200) -> DyeEquilibrium:
    """Solve the silence threshold by bisection on the fixed-point residual."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    lo = params.dist.support[0] + BRACKET_EPS
    hi = params.dist.mean - BRACKET_EPS
    # inner tolerance is tighter so the threshold error, not just the residual, is below tol
    t = bisect(lambda x: dye_residual(params, x), lo, hi, tol=tol * 1e-2, max_iter=max_iter)
    res = abs(dye_residual(params, t))
    if res > tol:
        raise NoConvergence(f"Dye residual {res:.3e} above tol {tol:.1e}", residual=res)
    return DyeEquilibrium(threshold=t, nondisclosure_price=silence_price(params, t), residual=res)
