"""Plot data for the three price-schedule figures, as tables on a fixed grid.

Figure 1 has two blocks: complex messages only, then all three messages.
Figure 2 has one block per equilibrium found by enumeration.
Figure 3 is the one-parameter model.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .full_model import (
    FullEquilibrium,
    FullParams,
    enumerate_equilibria,
    solve_full_equilibrium,
)
from .messages import Message, PriceLine
from .simple_model import MEDIAN, SimpleEquilibrium, offpath_bad_simple_price, price_schedule_simple

GRID_POINTS = 1001
FIGURE_COLUMNS = (
    "block", "label", "y", "price_obfuscate", "price_simple",
    "price_informative", "envelope", "chosen_message",
)
_ORDER = (Message.OBFUSCATE, Message.SIMPLE, Message.INFORMATIVE)
_COLUMN = {
    Message.OBFUSCATE: "price_obfuscate",
    Message.SIMPLE: "price_simple",
    Message.INFORMATIVE: "price_informative",
}


@dataclass
class FigureBlock:
    label: str
    rows: list[dict]
    # valuations where the chosen message changes, computed from the lines
    breakpoints: list[float]
    equilibrium: dict


def y_grid(n: int = GRID_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def _tabulate(block: int, label: str, prices) -> list[dict]:
    """``prices`` maps each message to a per-point array, NaN where unavailable.
    Ties go to the later (more price-sensitive) message."""
    rows = []
    ys = y_grid()
    for i, y in enumerate(ys):
        best, choice = -np.inf, None
        row = {"block": block, "label": label, "y": float(y)}
        for msg in _ORDER:
            v = prices.get(msg)
            val = None if v is None or np.isnan(v[i]) else float(v[i])
            row[_COLUMN[msg]] = val
            if val is not None and val >= best:
                best, choice = val, msg
        row["envelope"] = best
        row["chosen_message"] = choice.value
        rows.append(row)
    return rows


def _line_prices(lines: list[PriceLine]) -> dict:
    ys = y_grid()
    return {ln.message: ln.slope * ys + ln.intercept for ln in lines}


def _full_block(block: int, label: str, eq: FullEquilibrium) -> FigureBlock:
    lines = eq.lines()
    if not eq.simple_enabled:
        lines = [ln for ln in lines if ln.message is not Message.SIMPLE]
    rows = _tabulate(block, label, _line_prices(lines))
    if eq.simple_enabled:
        cuts = [t for t in (eq.t1, eq.t2) if 0.0 < t < 1.0]
    else:
        cuts = [eq.t1] if 0.0 < eq.t1 < 1.0 else []
    return FigureBlock(label, rows, sorted(set(cuts)), full_equilibrium_dict(eq))


def figure_simple(eq: SimpleEquilibrium) -> list[FigureBlock]:
    """Price schedules of the one-parameter model.

    The complex informative message is only available above the median, and
    below it the coarse signal is the off-path bad message.
    """
    ys = y_grid()
    sched = {region.message: line for region, line in price_schedule_simple(eq)}
    above = ys >= MEDIAN
    prices = {
        Message.OBFUSCATE: np.full_like(ys, eq.p_nondisc),
        Message.SIMPLE: np.where(above, eq.p_simple, offpath_bad_simple_price()),
        Message.INFORMATIVE: np.where(
            above, sched[Message.INFORMATIVE].slope * ys + sched[Message.INFORMATIVE].intercept, np.nan
        ),
    }
    rows = _tabulate(0, "simplified", prices)
    return [FigureBlock("simplified", rows, [MEDIAN, eq.tau], simple_equilibrium_dict(eq))]


def figure_complex_vs_strategic(params: FullParams, tol: float = 1e-8) -> list[FigureBlock]:
    """Left: complex messages only. Right: the three-message equilibrium."""
    left_params = dataclasses.replace(params, forced_simple=0.0)
    left = solve_full_equilibrium(left_params, tol=tol, simple_enabled=False)
    right = solve_full_equilibrium(params, tol=tol)
    return [_full_block(0, "complex_only", left), _full_block(1, "strategic_complexity", right)]


def figure_multiple(params: FullParams, n_starts: int = 4, tol: float = 1e-8) -> list[FigureBlock]:
    found = enumerate_equilibria(params, n_starts=n_starts, tol=tol)
    return [_full_block(k, eq.classification.value, eq) for k, eq in enumerate(found)]


def simple_equilibrium_dict(eq: SimpleEquilibrium) -> dict:
    return {
        "model": "simple",
        "q": eq.q,
        "tau": eq.tau,
        "p_nondisc": eq.p_nondisc,
        "p_simple": eq.p_simple,
        "method": eq.method,
        "regions": [
            {"message": r.message.value, "lo": r.lo, "hi": r.hi} for r in eq.regions()
        ],
    }


def full_equilibrium_dict(eq: FullEquilibrium) -> dict:
    return {
        "model": "full",
        "params": eq.params.as_dict(),
        "t1": eq.t1,
        "t2": eq.t2,
        "beliefs": {
            "e_simple": eq.beliefs.e_simple,
            "e_complex": eq.beliefs.e_complex,
            "e_obfusc": eq.beliefs.e_obfusc,
            "off_path": [m.value for m in eq.beliefs.off_path],
        },
        "classification": eq.classification.value,
        "residual": eq.residual,
        "iterations": eq.iterations,
        "simple_enabled": eq.simple_enabled,
        "lines": [
            {"message": ln.message.value, "slope": ln.slope, "intercept": ln.intercept}
            for ln in eq.lines()
            if eq.simple_enabled or ln.message is not Message.SIMPLE
        ],
    }
