"""Seeded simulation of a candidate equilibrium.

Draws are generated in fixed-size batches. Batch ``k`` uses a Philox
generator keyed by ``SeedSequence([seed, k])``. Philox is counter-based and
its output is specified bit-for-bit, so a given ``(seed, n_draws)`` gives the
same report on any platform. Per-batch moments are merged in batch order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ConfigError
from .full_model import FullEquilibrium, FullParams
from .simple_model import MEDIAN, SimpleEquilibrium, SimpleParams

BATCH_SIZE = 1 << 16

ModelParams = Union[SimpleParams, FullParams]
ModelEquilibrium = Union[SimpleEquilibrium, FullEquilibrium]


@dataclass(frozen=True)
class SimConfig:
    n_draws: int
    seed: int
    model: ModelParams
    equilibrium: ModelEquilibrium
    batch_size: int = BATCH_SIZE

    def __post_init__(self):
        if int(self.n_draws) != self.n_draws or self.n_draws < 1:
            raise ConfigError(f"n_draws must be a positive integer, got {self.n_draws!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be positive")
        if isinstance(self.model, SimpleParams):
            if not isinstance(self.equilibrium, SimpleEquilibrium):
                raise ConfigError("simple-model parameters need a simple-model equilibrium")
            if self.equilibrium.q != self.model.q:
                raise ConfigError("equilibrium was solved for a different q")
        elif isinstance(self.model, FullParams):
            if not isinstance(self.equilibrium, FullEquilibrium):
                raise ConfigError("full-model parameters need a full-model equilibrium")
            if self.equilibrium.params != self.model:
                raise ConfigError("equilibrium was solved for different parameters")
        else:
            raise ConfigError(f"unknown model type {type(self.model).__name__}")


class _Moments:
    """Running count / mean / M2, merged with the pairwise update."""

    __slots__ = ("n", "mean", "m2")

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add(self, x: np.ndarray) -> None:
        nb = x.size
        if nb == 0:
            return
        mb = float(x.mean())
        m2b = float(((x - mb) ** 2).sum())
        n = self.n + nb
        delta = mb - self.mean
        self.mean += delta * nb / n
        self.m2 += m2b + delta * delta * self.n * nb / n
        self.n = n

    def std_error(self) -> float:
        if self.n < 2:
            return math.inf
        return math.sqrt(self.m2 / (self.n - 1)) / math.sqrt(self.n)


@dataclass(frozen=True)
class Statistic:
    empirical: float
    analytic: float
    std_error: float
    count: int

    @property
    def z(self) -> float:
        diff = self.empirical - self.analytic
        if math.isinf(self.std_error):
            return math.nan
        if self.std_error == 0.0:
            return 0.0 if abs(diff) <= 1e-15 else math.copysign(math.inf, diff)
        return diff / self.std_error

    def as_dict(self) -> dict:
        return {
            "empirical": self.empirical,
            "analytic": self.analytic,
            "std_error": None if math.isinf(self.std_error) else self.std_error,
            "z": None if math.isnan(self.z) else self.z,
            "count": self.count,
        }


@dataclass(frozen=True)
class SimReport:
    model: str
    n_draws: int
    seed: int
    statistics: dict[str, Statistic]
    frequencies: dict[str, float]
    # some statistic has fewer than two observations, so its z-score is undefined
    degenerate: bool = False

    @property
    def mean_price(self) -> Statistic:
        return self.statistics["mean_price"]

    def max_abs_deviation(self) -> float:
        return max(abs(s.empirical - s.analytic) for s in self.statistics.values())

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "n_draws": self.n_draws,
            "seed": self.seed,
            "degenerate": self.degenerate,
            "frequencies": dict(self.frequencies),
            "max_abs_deviation": self.max_abs_deviation(),
            "statistics": {k: v.as_dict() for k, v in self.statistics.items()},
        }


def batch_rng(seed: int, batch: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, batch])))


def _simple_batch(eq: SimpleEquilibrium, rng, n, acc):
    y = rng.random(n)
    u = rng.random(n)
    obf = y < MEDIAN
    simple = (y >= MEDIAN) & (y < eq.tau)
    inf = y >= eq.tau
    read = inf & (u < eq.q)
    no_info = obf | (inf & ~read)
    price = np.where(simple, eq.p_simple, eq.p_nondisc)
    price = np.where(read, y, price)

    acc["freq_obfuscate"].add(obf.astype(float))
    acc["freq_simple"].add(simple.astype(float))
    acc["freq_informative"].add(inf.astype(float))
    acc["freq_no_information"].add(no_info.astype(float))
    acc["pool_no_information"].add(y[no_info])
    acc["pool_simple"].add(y[simple])
    acc["mean_price"].add(price)


def _simple_analytic(eq: SimpleEquilibrium) -> dict[str, float]:
    no_info = MEDIAN + (1.0 - eq.tau) * (1.0 - eq.q)
    return {
        "freq_obfuscate": MEDIAN,
        "freq_simple": eq.tau - MEDIAN,
        "freq_informative": 1.0 - eq.tau,
        "freq_no_information": no_info,
        "pool_no_information": eq.p_nondisc,
        "pool_simple": eq.p_simple,
        "mean_price": 0.5,
    }


def _full_batch(eq: FullEquilibrium, rng, n, acc):
    p = eq.params
    chi, rs, ru = p.chi, p.rho_s, p.rho_u
    e_s, e_c, e_o = eq.beliefs.as_tuple()
    y = rng.random(n)
    lottery = rng.random(n)
    u = rng.random(n)

    forced_s = lottery < p.forced_simple
    forced_o = (lottery >= p.forced_simple) & (lottery < p.forced_simple + p.forced_obfuscate)
    free = ~(forced_s | forced_o)
    simple = forced_s | (free & (y >= eq.t1) & (y < eq.t2))
    obf = forced_o | (free & (y < eq.t1))
    inf = free & (y >= eq.t2)
    complex_ = obf | inf

    # representative investor: sophisticated share chi, the rest see only "complex"
    price_simple = np.where(u < rs, y, e_s)
    price_inf = chi * y + (1.0 - chi) * e_c
    price_obf = np.where(u < ru, chi * y, chi * e_o) + (1.0 - chi) * e_c
    price = np.where(simple, price_simple, np.where(inf, price_inf, price_obf))

    acc["freq_obfuscate"].add(obf.astype(float))
    acc["freq_simple"].add(simple.astype(float))
    acc["freq_informative"].add(inf.astype(float))
    acc["pool_simple"].add(y[simple])
    acc["pool_complex"].add(y[complex_])
    acc["pool_obfuscated"].add(y[obf])
    acc["mean_price"].add(price)


def _full_analytic(eq: FullEquilibrium) -> dict[str, float]:
    from .messages import Message

    masses = eq.message_masses()
    e_s, e_c, e_o = eq.beliefs.as_tuple()
    return {
        "freq_obfuscate": masses[Message.OBFUSCATE],
        "freq_simple": masses[Message.SIMPLE],
        "freq_informative": masses[Message.INFORMATIVE],
        "pool_simple": e_s,
        "pool_complex": e_c,
        "pool_obfuscated": e_o,
        "mean_price": eq.params.dist.mean,
    }


def simulate(config: SimConfig) -> SimReport:
    eq = config.equilibrium
    if isinstance(eq, SimpleEquilibrium):
        analytic = _simple_analytic(eq)
        step = _simple_batch
        model = "simple"
    else:
        analytic = _full_analytic(eq)
        step = _full_batch
        model = "full"
    acc = {name: _Moments() for name in analytic}

    remaining = config.n_draws
    batch = 0
    while remaining > 0:
        n = min(config.batch_size, remaining)
        step(eq, batch_rng(config.seed, batch), n, acc)
        remaining -= n
        batch += 1

    stats = {
        name: Statistic(acc[name].mean, analytic[name], acc[name].std_error(), acc[name].n)
        for name in analytic
    }
    freqs = {
        "obfuscate": stats["freq_obfuscate"].empirical,
        "simple": stats["freq_simple"].empirical,
        "informative": stats["freq_informative"].empirical,
    }
    degenerate = any(math.isinf(s.std_error) for s in stats.values())
    return SimReport(model, config.n_draws, config.seed, stats, freqs, degenerate)


@dataclass(frozen=True)
class Verification:
    passed: bool
    z_scores: dict[str, float]
    failed: tuple[str, ...]
    z_threshold: float
    degenerate: bool = False

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "z_threshold": self.z_threshold,
            "degenerate": self.degenerate,
            "failed": list(self.failed),
            "z_scores": {k: (None if math.isnan(v) else v) for k, v in self.z_scores.items()},
        }


def verify_equilibrium(
    config: SimConfig, z_threshold: float = 4.0, report: SimReport | None = None
) -> Verification:
    """Pass iff every statistic's |z| is at most ``z_threshold``.

    A statistic with fewer than two observations has no z-score and fails.
    """
    if report is None:
        report = simulate(config)
    z = {name: s.z for name, s in report.statistics.items()}
    failed = tuple(name for name, v in z.items() if math.isnan(v) or abs(v) > z_threshold)
    return Verification(not failed, z, failed, z_threshold, report.degenerate)
