"""One-parameter strategic-complexity model.

Valuations are uniform on [0, 1]. Below 1/2 the manager obfuscates and is
priced at the no-information price; on ``[1/2, tau)`` the manager sends the
good coarse signal; above ``tau`` the manager sends a complex informative
report that the market reads with probability ``q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError, NoConvergence, NoInteriorEquilibrium
from .messages import Message, MessageRegion, PriceLine
from .rootfind import hybrid_root
from .valuation import UNIFORM01, ValuationDistribution

MEDIAN = 0.5
Q_MIN = 2.0 / 3.0


@dataclass(frozen=True)
class SimpleParams:
    q: float

    def __post_init__(self):
        if not (0.0 < self.q <= 1.0):
            raise ConfigError(f"q must lie in (0, 1], got {self.q!r}")


@dataclass(frozen=True)
class SimpleEquilibrium:
    tau: float
    p_nondisc: float
    p_simple: float
    q: float
    method: str = "closed_form"

    def regions(self) -> list[MessageRegion]:
        return [
            MessageRegion(Message.OBFUSCATE, 0.0, MEDIAN),
            MessageRegion(Message.SIMPLE, MEDIAN, self.tau),
            MessageRegion(Message.INFORMATIVE, self.tau, 1.0),
        ]

    def indifference_gap(self) -> float:
        return self.p_simple - (self.q * self.tau + (1.0 - self.q) * self.p_nondisc)


def _quadratic_denominator(q: float) -> float:
    return q * (7.0 - 4.0 * q) - 2.0


def tau_closed_form(params: SimpleParams) -> float:
    """Switch point from the simple to the complex informative message."""
    q = params.q
    if q <= Q_MIN:
        raise NoInteriorEquilibrium(f"q = {q!r} <= 2/3: the simple-disclosure region is empty")
    return 1.0 / (1.0 + math.sqrt((3.0 * q - 2.0) / _quadratic_denominator(q)))


def quadratic_residual(q: float, tau: float) -> float:
    """``1 - 2 tau + c tau^2`` with ``c = 4q(1-q) / (q(7-4q) - 2)``; its
    smaller root is the equilibrium threshold."""
    den = _quadratic_denominator(q)
    if den == 0.0:
        raise DomainError(f"quadratic undefined at q = {q!r}")
    c = 4.0 * q * (1.0 - q) / den
    return 1.0 - 2.0 * tau + c * tau * tau


def simple_price(tau: float) -> float:
    """Price of the good coarse signal: mean of the uniform on [1/2, tau)."""
    return 0.5 * (MEDIAN + tau)


def nondisclosure_price_bayes(
    params: SimpleParams, tau: float, dist: ValuationDistribution = UNIFORM01
) -> float:
    """Bayes price of the no-information pool.

    The pool mixes obfuscators below the median with informative reports above
    ``tau`` that the market failed to read.
    """
    if not (MEDIAN <= tau <= 1.0):
        raise DomainError(f"tau must lie in [1/2, 1], got {tau!r}")
    lo, hi = dist.support
    w_obf = dist.interval_mass(lo, MEDIAN)
    w_fail = dist.interval_mass(tau, hi) * (1.0 - params.q)
    num = w_obf * dist.truncated_mean(lo, MEDIAN) + w_fail * dist.truncated_mean(tau, hi)
    return num / (w_obf + w_fail)


def indifference_price(params: SimpleParams, tau: float) -> float:
    """No-information price that makes the manager at ``tau`` indifferent
    between the simple and the informative message."""
    q = params.q
    if q >= 1.0:
        raise DomainError("indifference price is undefined at q = 1")
    return (simple_price(tau) - q * tau) / (1.0 - q)


def _equilibrium_at(params: SimpleParams, tau: float, method: str) -> SimpleEquilibrium:
    return SimpleEquilibrium(
        tau=tau,
        p_nondisc=nondisclosure_price_bayes(params, tau),
        p_simple=simple_price(tau),
        q=params.q,
        method=method,
    )


def solve_simple_closed_form(params: SimpleParams) -> SimpleEquilibrium:
    return _equilibrium_at(params, tau_closed_form(params), "closed_form")


def solve_simple_fixed_point(
    params: SimpleParams, tol: float = 1e-12, max_iter: int = 200
) -> SimpleEquilibrium:
    """Find tau where the indifference price equals the Bayes price.

    Bisection narrows ``[1/2, 1]`` and secant steps finish the job. The
    closed form is not used, so the two paths check each other.
    """
    q = params.q
    if q >= 1.0:
        raise DomainError("fixed-point path requires q < 1; use the closed form at q = 1")
    if tol <= 0:
        raise DomainError("tol must be positive")

    # (indifference price - Bayes price) * (1 - q): same root, but stays well
    # scaled as q -> 1 where the indifference price blows up
    def gap(tau):
        return simple_price(tau) - q * tau - (1.0 - q) * nondisclosure_price_bayes(params, tau)

    # At q = 2/3 the root sits on tau = 1, where the simple region is not empty
    # in the limit only; require strictly interior parameters.
    if q <= Q_MIN:
        raise NoInteriorEquilibrium(f"q = {q!r} <= 2/3: the simple-disclosure region is empty")
    tau = hybrid_root(gap, MEDIAN, 1.0, tol=tol, max_iter=max_iter)
    res = abs(gap(tau))
    if res > tol:
        raise NoConvergence(f"fixed-point residual {res:.3e} above {tol:.1e}", residual=res)
    return _equilibrium_at(params, tau, "fixed_point")


def solve_simple(params: SimpleParams, tol: float = 1e-12) -> SimpleEquilibrium:
    """Closed form at q = 1, fixed point otherwise."""
    if params.q >= 1.0:
        return solve_simple_closed_form(params)
    return solve_simple_fixed_point(params, tol=tol)


def price_schedule_simple(eq: SimpleEquilibrium) -> list[tuple[MessageRegion, PriceLine]]:
    """Regions paired with the expected price each message fetches."""
    q = eq.q
    lines = [
        PriceLine(0.0, eq.p_nondisc, Message.OBFUSCATE),
        PriceLine(0.0, eq.p_simple, Message.SIMPLE),
        PriceLine(q, (1.0 - q) * eq.p_nondisc, Message.INFORMATIVE),
    ]
    return list(zip(eq.regions(), lines))


def offpath_bad_simple_price(dist: ValuationDistribution = UNIFORM01) -> float:
    """Conventional price for the never-sent bad coarse signal."""
    return dist.truncated_mean(dist.support[0], MEDIAN)
