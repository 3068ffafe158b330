"""Message vocabulary and affine price schedules shared by both models."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Message(enum.Enum):
    """Messages in increasing order of price sensitivity.

    In the one-parameter model SIMPLE is the good coarse signal; the bad
    coarse signal is never sent voluntarily and has no member here.
    """

    OBFUSCATE = "obfuscate"
    SIMPLE = "simple"
    INFORMATIVE = "informative"


@dataclass(frozen=True)
class MessageRegion:
    """Half-open interval ``[lo, hi)`` of valuations sending ``message``; the
    last region of a partition is closed at the top of the support."""

    message: Message
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.hi <= self.lo

    @property
    def width(self) -> float:
        return max(self.hi - self.lo, 0.0)


@dataclass(frozen=True)
class PriceLine:
    slope: float
    intercept: float
    message: Message

    def __call__(self, y):
        return self.slope * y + self.intercept

    def crossing(self, other: "PriceLine") -> float:
        """Valuation at which the two lines meet (inf when parallel)."""
        ds = other.slope - self.slope
        if ds == 0.0:
            return float("inf")
        return (self.intercept - other.intercept) / ds
