import numpy as np
import pytest

from oracles import bisect_oracle, dye_residual_uniform
from strategic_complexity.dye import (
    DyeParams,
    dye_closed_form,
    dye_residual,
    silence_price,
    solve_dye,
)
from strategic_complexity.errors import ConfigError


def test_closed_form_matches_independent_bisection():
    for p in (0.04, 0.25, 0.5, 0.9):
        oracle = bisect_oracle(lambda t: dye_residual_uniform(p, t), 1e-12, 0.5)
        assert dye_closed_form(p) == pytest.approx(oracle, abs=1e-13)


@pytest.mark.parametrize("p, expected", [(0.25, 1 / 3), (0.04, 1 / 6)])
def test_solve_dye_values(p, expected):
    eq = solve_dye(DyeParams(p))
    assert abs(eq.threshold - expected) <= 1e-10
    assert eq.nondisclosure_price == pytest.approx(eq.threshold, abs=1e-10)


def test_near_certain_silence_tends_to_prior_mean():
    assert solve_dye(DyeParams(1 - 1e-9)).threshold == pytest.approx(0.5, abs=1e-4)


def test_threshold_increasing_in_p():
    ts = [solve_dye(DyeParams(p)).threshold for p in np.linspace(0.01, 0.99, 50)]
    assert all(b > a for a, b in zip(ts, ts[1:]))


@pytest.mark.parametrize("p", [0.1, 0.25, 0.6])
def test_martingale(p):
    params = DyeParams(p)
    t = solve_dye(params).threshold
    disclosed = (1 - p) * (1 - t * t) / 2  # informed above t priced at y
    silent_mass = p + (1 - p) * t
    assert abs(disclosed + silent_mass * silence_price(params, t) - 0.5) <= 1e-10


def test_residual_signs_bracket_root():
    params = DyeParams(0.25)
    assert dye_residual(params, 1e-6) < 0 < dye_residual(params, 0.5)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.2])
def test_invalid_probability(p):
    with pytest.raises(ConfigError):
        DyeParams(p)
