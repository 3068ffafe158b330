"""Comparative statics and numerical checks of the empirical predictions:
U-shaped complexity in news, complex propensity, and announcement returns."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigError, NoConvergence, NoInteriorEquilibrium, OffPathMessage
from .full_model import (
    Beliefs,
    Classification,
    FullEquilibrium,
    FullParams,
    enumerate_equilibria,
    message_masses,
    solve_full_equilibrium,
    update_beliefs,
)
from .messages import Message
from .simple_model import MEDIAN, SimpleEquilibrium, SimpleParams, solve_simple

Equilibrium = Union[SimpleEquilibrium, FullEquilibrium]

SIMPLE_PARAMS = ("q",)
FULL_PARAMS = ("chi", "rho_s", "rho_u", "forced_simple", "forced_obfuscate")


class Signal(enum.Enum):
    """What the market observes, for announcement returns."""

    SIMPLE = "simple"
    COMPLEX = "complex"
    NO_INFORMATION = "no_information"
    OBFUSCATED = "obfuscated"
    SIMPLE_BAD = "simple_bad"


class Status(enum.Enum):
    OK = "ok"
    NO_INTERIOR_EQUILIBRIUM = "no_interior_equilibrium"
    NO_CONVERGENCE = "no_convergence"
    INVALID_ORDERING = "invalid_ordering"


@dataclass(frozen=True)
class UShape:
    is_u_shaped: bool
    lower: tuple[float, float]
    middle: tuple[float, float]
    upper: tuple[float, float]


def _voluntary_cutoffs(eq: Equilibrium) -> tuple[float, float]:
    if isinstance(eq, SimpleEquilibrium):
        return MEDIAN, eq.tau
    return eq.t1, eq.t2


def check_u_shape(eq: Equilibrium) -> UShape:
    """Complex on a low region, simple in the middle, complex on a high region.

    All three regions must be non-empty.
    """
    a, b = _voluntary_cutoffs(eq)
    lower, middle, upper = (0.0, a), (a, b), (b, 1.0)
    ok = all(hi > lo for lo, hi in (lower, middle, upper))
    return UShape(ok, lower, middle, upper)


def _simple_complex_pool_mean(eq: SimpleEquilibrium) -> float:
    w_low, w_high = MEDIAN, 1.0 - eq.tau
    return (w_low * 0.25 + w_high * 0.5 * (1.0 + eq.tau)) / (w_low + w_high)


def announcement_return(eq: Equilibrium, message: Signal | str) -> float:
    """E(value | observed signal) minus the prior mean."""
    message = Signal(message)
    if isinstance(eq, SimpleEquilibrium):
        if message is Signal.SIMPLE:
            if eq.tau <= MEDIAN:
                raise OffPathMessage("the simple message is not sent when tau = 1/2")
            return eq.p_simple - 0.5
        if message is Signal.NO_INFORMATION:
            return eq.p_nondisc - 0.5
        if message is Signal.COMPLEX:
            return _simple_complex_pool_mean(eq) - 0.5
        if message is Signal.SIMPLE_BAD:
            raise OffPathMessage("the bad simple message is never sent")
        raise ConfigError(f"{message.value!r} is not observable in the simple model")

    prior = eq.params.dist.mean
    pools = update_beliefs(eq.params, eq.t1, eq.t2)
    masses = message_masses(eq.params, eq.t1, eq.t2)
    if message is Signal.SIMPLE:
        if masses[Message.SIMPLE] <= 0.0:
            raise OffPathMessage("no manager sends the simple message")
        return pools.e_simple - prior
    if message is Signal.COMPLEX:
        if masses[Message.OBFUSCATE] + masses[Message.INFORMATIVE] <= 0.0:
            raise OffPathMessage("no manager sends a complex message")
        return pools.e_complex - prior
    if message is Signal.OBFUSCATED:
        if masses[Message.OBFUSCATE] <= 0.0:
            raise OffPathMessage("no manager obfuscates")
        return pools.e_obfusc - prior
    raise ConfigError(f"{message.value!r} is not observable in the full model")


def message_probabilities(eq: Equilibrium) -> dict[Message, float]:
    if isinstance(eq, SimpleEquilibrium):
        return {
            Message.OBFUSCATE: MEDIAN,
            Message.SIMPLE: eq.tau - MEDIAN,
            Message.INFORMATIVE: 1.0 - eq.tau,
        }
    return message_masses(eq.params, eq.t1, eq.t2)


def complex_propensity(eq: Equilibrium) -> float:
    """Probability that either complex message is sent."""
    probs = message_probabilities(eq)
    return probs[Message.OBFUSCATE] + probs[Message.INFORMATIVE]


@dataclass(frozen=True)
class SweepSpec:
    param: str
    start: float
    stop: float
    steps: int
    base: Union[SimpleParams, FullParams]
    # "continuation" warm-starts each point from the previous beliefs;
    # "cold" enumerates equilibria independently at each point
    mode: str = "continuation"
    branch: Classification | None = None
    init: Beliefs | None = None
    tol: float = 1e-8
    n_starts: int = 4

    def __post_init__(self):
        simple = isinstance(self.base, SimpleParams)
        allowed = SIMPLE_PARAMS if simple else FULL_PARAMS
        if self.param not in allowed:
            raise ConfigError(f"cannot sweep {self.param!r}; choose one of {', '.join(allowed)}")
        if self.steps < 2:
            raise ConfigError("steps must be at least 2")
        if not self.start < self.stop:
            raise ConfigError(f"sweep range must be increasing, got {self.start} to {self.stop}")
        if self.mode not in ("continuation", "cold"):
            raise ConfigError(f"unknown sweep mode {self.mode!r}")
        # constructing every grid point validates the parameter domain
        for v in self.values():
            self.params_at(v)

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]

    def params_at(self, value: float):
        return dataclasses.replace(self.base, **{self.param: value})


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    status: Status
    equilibrium: Equilibrium | None = None
    equilibrium_lost: bool = False
    eq_index: int = 0

    def as_row(self) -> dict:
        row = {
            "param": self.param,
            "value": self.value,
            "status": self.status.value,
            "eq_index": self.eq_index,
            "equilibrium_lost": self.equilibrium_lost,
        }
        eq = self.equilibrium
        if eq is None:
            return row
        probs = message_probabilities(eq)
        row.update(
            prob_obfuscate=probs[Message.OBFUSCATE],
            prob_simple=probs[Message.SIMPLE],
            prob_informative=probs[Message.INFORMATIVE],
            prob_complex=probs[Message.OBFUSCATE] + probs[Message.INFORMATIVE],
            u_shape=check_u_shape(eq).is_u_shaped,
        )
        try:
            row["ret_simple"] = announcement_return(eq, Signal.SIMPLE)
        except OffPathMessage:
            row["ret_simple"] = None
        if isinstance(eq, SimpleEquilibrium):
            row.update(
                tau=eq.tau,
                p_nondisc=eq.p_nondisc,
                p_simple=eq.p_simple,
                ret_no_information=announcement_return(eq, Signal.NO_INFORMATION),
            )
        else:
            row.update(
                t1=eq.t1,
                t2=eq.t2,
                e_simple=eq.beliefs.e_simple,
                e_complex=eq.beliefs.e_complex,
                e_obfusc=eq.beliefs.e_obfusc,
                classification=eq.classification.value,
                residual=eq.residual,
            )
            try:
                row["ret_complex"] = announcement_return(eq, Signal.COMPLEX)
            except OffPathMessage:
                row["ret_complex"] = None
        return row


SIMPLE_SWEEP_COLUMNS = (
    "param", "value", "status", "tau", "p_nondisc", "p_simple",
    "prob_obfuscate", "prob_simple", "prob_informative", "prob_complex",
    "ret_simple", "ret_no_information", "u_shape",
)
FULL_SWEEP_COLUMNS = (
    "param", "value", "status", "eq_index", "equilibrium_lost",
    "t1", "t2", "e_simple", "e_complex", "e_obfusc", "classification",
    "prob_obfuscate", "prob_simple", "prob_informative", "prob_complex",
    "ret_simple", "ret_complex", "u_shape", "residual",
)


def _sweep_simple(spec: SweepSpec) -> list[SweepRow]:
    rows = []
    for v in spec.values():
        params = spec.params_at(v)
        try:
            eq = solve_simple(params, tol=min(spec.tol, 1e-12))
        except NoInteriorEquilibrium:
            rows.append(SweepRow(spec.param, v, Status.NO_INTERIOR_EQUILIBRIUM))
            continue
        except NoConvergence:
            rows.append(SweepRow(spec.param, v, Status.NO_CONVERGENCE))
            continue
        rows.append(SweepRow(spec.param, v, Status.OK, eq))
    return rows


def _ordering_ok(params: FullParams) -> bool:
    return params.chi * params.rho_u < params.rho_s < params.chi


def _sweep_full_cold(spec: SweepSpec) -> list[SweepRow]:
    rows = []
    for v in spec.values():
        params = spec.params_at(v)
        if not _ordering_ok(params):
            rows.append(SweepRow(spec.param, v, Status.INVALID_ORDERING))
            continue
        found = enumerate_equilibria(params, n_starts=spec.n_starts, tol=spec.tol)
        if not found.equilibria:
            rows.append(SweepRow(spec.param, v, Status.NO_CONVERGENCE))
            continue
        for k, eq in enumerate(found.equilibria):
            rows.append(SweepRow(spec.param, v, Status.OK, eq, eq_index=k))
    return rows


def _sweep_full_continuation(spec: SweepSpec) -> list[SweepRow]:
    rows = []
    beliefs = spec.init
    tracked = spec.branch
    first = True
    for v in spec.values():
        params = spec.params_at(v)
        if not _ordering_ok(params):
            rows.append(SweepRow(spec.param, v, Status.INVALID_ORDERING, equilibrium_lost=not first))
            continue
        eq = None
        if first and spec.branch is not None:
            found = enumerate_equilibria(params, n_starts=spec.n_starts, tol=spec.tol)
            eq = next((e for e in found if e.classification is spec.branch), None)
            if eq is None:
                rows.append(SweepRow(spec.param, v, Status.NO_CONVERGENCE, equilibrium_lost=True))
                continue
        else:
            try:
                eq = solve_full_equilibrium(params, beliefs, tol=spec.tol)
            except NoConvergence:
                rows.append(SweepRow(spec.param, v, Status.NO_CONVERGENCE, equilibrium_lost=not first))
                continue
        lost = tracked is not None and eq.classification is not tracked
        rows.append(SweepRow(spec.param, v, Status.OK, eq, equilibrium_lost=lost))
        tracked = eq.classification
        beliefs = eq.beliefs
        first = False
    return rows


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Solve the model along a one-parameter grid, in parameter order.

    In continuation mode a row is flagged ``equilibrium_lost`` when the
    warm-started solve lands on the other classification or fails, which
    means the branch being followed has disappeared.
    """
    if isinstance(spec.base, SimpleParams):
        return _sweep_simple(spec)
    if spec.mode == "cold":
        return _sweep_full_cold(spec)
    return _sweep_full_continuation(spec)


def classification_flips(rows: list[SweepRow]) -> list[float]:
    """Grid values where a continuation sweep switches classification."""
    return [r.value for r in rows if r.equilibrium_lost and r.equilibrium is not None]
