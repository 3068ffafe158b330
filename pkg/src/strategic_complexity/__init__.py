"""Equilibria of disclosure games in which managers choose how complex to make
their reports."""

__version__ = "0.1.0"

from .dye import DyeEquilibrium, DyeParams, dye_closed_form, solve_dye
from .errors import (
    ConfigError,
    DomainError,
    InvalidOrdering,
    ModelError,
    NoConvergence,
    NoInteriorEquilibrium,
    OffPathMessage,
)
from .full_model import (
    Beliefs,
    Classification,
    FullEquilibrium,
    FullParams,
    classify_equilibrium,
    classify_pool_means,
    enumerate_equilibria,
    price_lines,
    solve_full_equilibrium,
    update_beliefs,
    upper_envelope_regions,
)
from .messages import Message, MessageRegion, PriceLine
from .montecarlo import SimConfig, SimReport, simulate, verify_equilibrium
from .simple_model import (
    SimpleEquilibrium,
    SimpleParams,
    indifference_price,
    nondisclosure_price_bayes,
    price_schedule_simple,
    quadratic_residual,
    solve_simple,
    solve_simple_fixed_point,
    tau_closed_form,
)
from .statics import (
    Signal,
    SweepSpec,
    announcement_return,
    check_u_shape,
    complex_propensity,
    run_sweep,
)
from .valuation import UNIFORM01, ValuationDistribution, interval_mass, truncated_mean
