"""Three-message model with sophisticated and unsophisticated investors.

Each message fetches an affine expected price in the manager's valuation.
The manager picks the upper envelope of the three lines, and the beliefs
inside the intercepts must match the pools the envelope produces. Equilibria
are the fixed points of that loop; there can be several.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InvalidOrdering, NoConvergence
from .messages import Message, MessageRegion, PriceLine
from .valuation import UNIFORM01, ValuationDistribution, pooled_mean

DAMPING = 0.5
MIN_DAMPING = 1.0 / 1024
DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 10_000
CROSSING_TOL = 1e-12


class Classification(enum.Enum):
    SIMPLE_BAD_NEWS = "SimpleBadNews"
    SIMPLE_GOOD_NEWS = "SimpleGoodNews"


@dataclass(frozen=True)
class FullParams:
    chi: float
    rho_s: float
    rho_u: float
    forced_simple: float = 0.0
    forced_obfuscate: float = 0.0
    dist: ValuationDistribution = field(default=UNIFORM01)

    def __post_init__(self):
        for name in ("chi", "rho_s", "rho_u"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0) or math.isnan(v):
                raise ConfigError(f"{name} must lie in [0, 1], got {v!r}")
        for name in ("forced_simple", "forced_obfuscate"):
            v = getattr(self, name)
            if not v >= 0.0:
                raise ConfigError(f"{name} must be non-negative, got {v!r}")
        if self.forced_simple + self.forced_obfuscate >= 1.0:
            raise ConfigError("forced_simple + forced_obfuscate must be below 1")

    @property
    def free_mass(self) -> float:
        return 1.0 - self.forced_simple - self.forced_obfuscate

    def check_ordering(self, simple_enabled: bool = True) -> None:
        lo, mid, hi = self.chi * self.rho_u, self.rho_s, self.chi
        if simple_enabled and not (lo < mid < hi):
            raise InvalidOrdering(
                f"need chi*rho_u < rho_s < chi, got {lo:.6g} < {mid:.6g} < {hi:.6g}"
            )
        if not simple_enabled and not lo < hi:
            raise InvalidOrdering(f"need chi*rho_u < chi, got {lo:.6g} < {hi:.6g}")

    def as_dict(self) -> dict:
        return {
            "chi": self.chi,
            "rho_s": self.rho_s,
            "rho_u": self.rho_u,
            "forced_simple": self.forced_simple,
            "forced_obfuscate": self.forced_obfuscate,
        }


@dataclass(frozen=True)
class Beliefs:
    e_simple: float
    e_complex: float
    e_obfusc: float
    # pools that were empty and fell back to the prior mean
    off_path: tuple[Message, ...] = ()

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.e_simple, self.e_complex, self.e_obfusc)

    @classmethod
    def uniform(cls, value: float) -> "Beliefs":
        return cls(value, value, value)


@dataclass(frozen=True)
class FullEquilibrium:
    t1: float
    t2: float
    beliefs: Beliefs
    classification: Classification
    residual: float
    params: FullParams
    iterations: int = 0
    simple_enabled: bool = True

    def regions(self) -> list[MessageRegion]:
        lo, hi = self.params.dist.support
        return [
            MessageRegion(Message.OBFUSCATE, lo, self.t1),
            MessageRegion(Message.SIMPLE, self.t1, self.t2),
            MessageRegion(Message.INFORMATIVE, self.t2, hi),
        ]

    def lines(self) -> list[PriceLine]:
        return price_lines(self.params, self.beliefs)

    def message_masses(self) -> dict[Message, float]:
        return message_masses(self.params, self.t1, self.t2)


def price_lines(params: FullParams, beliefs: Beliefs) -> list[PriceLine]:
    """Expected-price lines ordered (obfuscated, simple, informative)."""
    chi, rs, ru = params.chi, params.rho_s, params.rho_u
    e_s, e_c, e_o = beliefs.as_tuple()
    return [
        PriceLine(chi * ru, chi * (1.0 - ru) * e_o + (1.0 - chi) * e_c, Message.OBFUSCATE),
        PriceLine(rs, (1.0 - rs) * e_s, Message.SIMPLE),
        PriceLine(chi, (1.0 - chi) * e_c, Message.INFORMATIVE),
    ]


def upper_envelope(lines, lo: float = 0.0, hi: float = 1.0) -> list[MessageRegion]:
    """Pointwise argmax partition of ``[lo, hi]`` for any set of lines with
    distinct slopes.

    Only non-empty regions are returned, in increasing order of valuation.
    A valuation where two lines tie goes to the steeper line.
    """
    ordered = sorted(lines, key=lambda ln: ln.slope)
    at_lo = [ln(lo) for ln in ordered]
    best = max(at_lo)
    # highest-slope line among those attaining the max at lo
    current = max(i for i, v in enumerate(at_lo) if v == best)
    pos = lo
    regions = []
    while True:
        crossings = [
            (ordered[current].crossing(ordered[j]), j) for j in range(current + 1, len(ordered))
        ]
        crossings = [(x, j) for x, j in crossings if x < hi]
        nxt, x_next = None, hi
        if crossings:
            x_next = min(x for x, _ in crossings)
            # lines meeting at (numerically) one point: the steepest takes over
            nxt = max(j for x, j in crossings if x <= x_next + CROSSING_TOL)
            x_next = max(x for x, j in crossings if j == nxt)
        if nxt is None:
            regions.append(MessageRegion(ordered[current].message, pos, hi))
            return regions
        x_next = max(x_next, pos)
        if x_next > pos:
            regions.append(MessageRegion(ordered[current].message, pos, x_next))
        current, pos = nxt, x_next


def upper_envelope_regions(lines) -> list[MessageRegion]:
    """Envelope of the three full-model price lines on [0, 1]."""
    slopes = {ln.message: ln.slope for ln in lines}
    if len(slopes) == 3 and not (
        slopes[Message.OBFUSCATE] < slopes[Message.SIMPLE] < slopes[Message.INFORMATIVE]
    ):
        raise InvalidOrdering(
            "price sensitivities must satisfy obfuscated < simple < informative"
        )
    return upper_envelope(lines)


def thresholds_from_regions(regions, lo: float = 0.0, hi: float = 1.0) -> tuple[float, float]:
    """Collapse an envelope partition to ``(t1, t2)``."""
    by_msg = {r.message: r for r in regions}
    t1 = by_msg[Message.OBFUSCATE].hi if Message.OBFUSCATE in by_msg else lo
    if Message.INFORMATIVE in by_msg:
        t2 = by_msg[Message.INFORMATIVE].lo
    elif Message.SIMPLE in by_msg:
        t2 = hi
    else:
        t2 = t1
    return t1, t2


def best_response(params: FullParams, beliefs: Beliefs, simple_enabled: bool = True):
    lines = price_lines(params, beliefs)
    if not simple_enabled:
        lines = [ln for ln in lines if ln.message is not Message.SIMPLE]
    lo, hi = params.dist.support
    return thresholds_from_regions(upper_envelope(lines, lo, hi), lo, hi)


def _pools(params: FullParams, t1: float, t2: float):
    dist = params.dist
    lo, hi = dist.support
    m = params.free_mass
    mu = dist.mean
    obf = (m * dist.interval_mass(lo, t1), dist.truncated_mean(lo, t1))
    simple_v = (m * dist.interval_mass(t1, t2), dist.truncated_mean(t1, t2))
    inf = (m * dist.interval_mass(t2, hi), dist.truncated_mean(t2, hi))
    forced_s = (params.forced_simple, mu)
    forced_o = (params.forced_obfuscate, mu)
    return {
        Message.SIMPLE: [simple_v, forced_s],
        "complex": [obf, inf, forced_o],
        Message.OBFUSCATE: [obf, forced_o],
    }


def update_beliefs(params: FullParams, t1: float, t2: float) -> Beliefs:
    """Bayes-consistent pool means for thresholds ``t1 <= t2``."""
    if not (0.0 <= t1 <= t2 <= 1.0):
        raise ConfigError(f"thresholds must satisfy 0 <= t1 <= t2 <= 1, got {t1!r}, {t2!r}")
    pools = _pools(params, t1, t2)
    mu = params.dist.mean
    e_s, off_s = pooled_mean(pools[Message.SIMPLE], mu)
    e_c, off_c = pooled_mean(pools["complex"], mu)
    e_o, off_o = pooled_mean(pools[Message.OBFUSCATE], mu)
    off = tuple(
        msg
        for msg, flag in (
            (Message.SIMPLE, off_s),
            (Message.INFORMATIVE, off_c),
            (Message.OBFUSCATE, off_o),
        )
        if flag
    )
    return Beliefs(e_s, e_c, e_o, off)


def message_masses(params: FullParams, t1: float, t2: float) -> dict[Message, float]:
    """Probability of each message, voluntary plus forced."""
    pools = _pools(params, t1, t2)
    return {
        Message.OBFUSCATE: sum(w for w, _ in pools[Message.OBFUSCATE]),
        Message.SIMPLE: sum(w for w, _ in pools[Message.SIMPLE]),
        Message.INFORMATIVE: pools["complex"][1][0],
    }


def classify_pool_means(simple_mean: float, complex_mean: float) -> Classification:
    # ties count as bad news
    if simple_mean > complex_mean:
        return Classification.SIMPLE_GOOD_NEWS
    return Classification.SIMPLE_BAD_NEWS


def classify_equilibrium(params: FullParams, t1: float, t2: float) -> Classification:
    b = update_beliefs(params, t1, t2)
    return classify_pool_means(b.e_simple, b.e_complex)


def solve_full_equilibrium(
    params: FullParams,
    init: Beliefs | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    damping: float = DAMPING,
    simple_enabled: bool = True,
) -> FullEquilibrium:
    """Damped best-response / Bayes-update iteration from a belief conjecture.

    The damping weight starts at ``damping`` and is halved whenever the
    sup-norm belief change grows. Around equilibria where the belief map
    overshoots strongly, a fixed weight of one half oscillates forever.
    """
    params.check_ordering(simple_enabled)
    if tol <= 0:
        raise ConfigError("tol must be positive")
    if init is None:
        init = Beliefs.uniform(params.dist.mean)
    b = list(init.as_tuple())
    d = damping
    prev = math.inf
    r = math.inf
    for it in range(1, max_iter + 1):
        t1, t2 = best_response(params, Beliefs(*b), simple_enabled)
        nb = update_beliefs(params, t1, t2)
        step = [n - o for n, o in zip(nb.as_tuple(), b)]
        r = max(abs(s) for s in step)
        if r <= tol:
            beliefs = Beliefs(b[0], b[1], b[2], nb.off_path)
            return FullEquilibrium(
                t1=t1,
                t2=t2,
                beliefs=beliefs,
                classification=classify_pool_means(nb.e_simple, nb.e_complex),
                residual=r,
                params=params,
                iterations=it,
                simple_enabled=simple_enabled,
            )
        if r > prev:
            d = max(0.5 * d, MIN_DAMPING)
        prev = r
        b = [o + d * s for o, s in zip(b, step)]
    raise NoConvergence(
        f"belief iteration did not converge in {max_iter} steps (last change {r:.3e})",
        residual=r,
        iterations=max_iter,
    )


@dataclass
class Enumeration:
    equilibria: list[FullEquilibrium]
    n_starts: int
    n_failed: int

    def classifications(self) -> set[Classification]:
        return {eq.classification for eq in self.equilibria}

    def __iter__(self):
        return iter(self.equilibria)

    def __len__(self):
        return len(self.equilibria)


def start_lattice(n_starts: int) -> list[Beliefs]:
    """``n_starts`` points per axis over [0, 1]^3, in lexicographic order."""
    axis = np.linspace(0.0, 1.0, n_starts)
    return [Beliefs(float(a), float(b), float(c)) for a, b, c in itertools.product(axis, repeat=3)]


def enumerate_equilibria(
    params: FullParams,
    n_starts: int = 4,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    starts: list[Beliefs] | None = None,
    simple_enabled: bool = True,
) -> Enumeration:
    """Solve from a lattice of belief conjectures and keep distinct equilibria.

    Two equilibria are the same when both thresholds agree within ``10 * tol``.
    """
    params.check_ordering(simple_enabled)
    if starts is None:
        if n_starts < 2:
            raise ConfigError("n_starts must be at least 2")
        starts = start_lattice(n_starts)
    key_tol = 10.0 * tol
    found: list[FullEquilibrium] = []
    failed = 0
    for init in starts:
        try:
            eq = solve_full_equilibrium(
                params, init, tol=tol, max_iter=max_iter, simple_enabled=simple_enabled
            )
        except NoConvergence:
            failed += 1
            continue
        if not any(
            abs(eq.t1 - other.t1) < key_tol and abs(eq.t2 - other.t2) < key_tol
            for other in found
        ):
            found.append(eq)
    found.sort(key=lambda e: (e.classification.value, e.t1, e.t2))
    return Enumeration(found, len(starts), failed)
