"""Prior distributions over the manager's private valuation."""

from __future__ import annotations

import enum

import numpy as np

from .errors import DomainError


class ValuationDistribution(enum.Enum):
    """Prior over the manager's information. Only the uniform on [0, 1] is
    implemented; solvers go through the methods below so other kinds can be
    added without touching them."""

    UNIFORM01 = "uniform01"

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    @property
    def mean(self) -> float:
        return 0.5

    def cdf(self, y: float) -> float:
        lo, hi = self.support
        return min(max(y - lo, 0.0), hi - lo) / (hi - lo)

    def _check(self, lo: float, hi: float) -> None:
        s_lo, s_hi = self.support
        if not (s_lo <= lo <= hi <= s_hi):
            raise DomainError(
                f"invalid interval [{lo!r}, {hi!r}] for support [{s_lo}, {s_hi}]"
            )

    def interval_mass(self, lo: float, hi: float) -> float:
        self._check(lo, hi)
        return hi - lo

    def truncated_mean(self, lo: float, hi: float) -> float:
        # lo == hi returns lo: empty regions are routine in threshold solvers
        self._check(lo, hi)
        return 0.5 * (lo + hi)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.random(size)


UNIFORM01 = ValuationDistribution.UNIFORM01


def truncated_mean(dist: ValuationDistribution, lo: float, hi: float) -> float:
    """E(y | lo <= y <= hi) under ``dist``."""
    return dist.truncated_mean(lo, hi)


def interval_mass(dist: ValuationDistribution, lo: float, hi: float) -> float:
    """P(lo <= y <= hi) under ``dist``."""
    return dist.interval_mass(lo, hi)


def pooled_mean(parts, default: float) -> tuple[float, bool]:
    """Mass-weighted mean of ``(mass, mean)`` pairs.

    Returns ``(mean, off_path)``; an empty pool yields ``default`` with the
    off-path flag set.
    """
    total = 0.0
    acc = 0.0
    for mass, mu in parts:
        total += mass
        acc += mass * mu
    if total <= 0.0:
        return default, True
    return acc / total, False
