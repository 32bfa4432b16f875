"""Recovering the adversary (or the trader) that rationalizes a strategy."""

import numpy as np
import pytest

from impact_games.best_response import best_response_generic
from impact_games.core import ImpactParams, TimeGrid, make_analytic
from impact_games.cost import el_residual
from impact_games.equilibrium import two_trader
from impact_games.inverse import inverse_for_a, inverse_for_b

GRID = TimeGrid.uniform(2000)


def test_recovered_adversary_rationalizes_the_given_strategy():
    params = ImpactParams(kappa=2.0, lam=3.0)
    a = make_analytic("br-risk-neutral", kappa=2.0, lam=3.0)
    b_star = inverse_for_b(a, params, grid=GRID)
    r = el_residual(a, b_star, params, "A", grid=GRID)
    assert np.max(np.abs(r[3:-3])) < 1e-6
    assert b_star.values[0] == pytest.approx(0.0, abs=1e-12)
    assert b_star.values[-1] == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("kappa,lam", [(0.5, 1.0), (5.0, 5.0), (1.0, 25.0)])
def test_equilibrium_strategies_rationalize_each_other(kappa, lam):
    params = ImpactParams(kappa=kappa, lam=lam)
    pair = two_trader(params)
    t = GRID.points
    b_rec = inverse_for_b(pair.a, params, grid=GRID)
    assert np.max(np.abs(b_rec.values - pair.b.value(t))) < 1e-6
    a_rec = inverse_for_a(pair.b, params, grid=GRID)
    assert np.max(np.abs(a_rec.values - pair.a.value(t))) < 1e-6


@pytest.mark.parametrize("family,sigma", [("risk-averse", 2.0), ("eager", 3.0)])
def test_forward_then_inverse_round_trip(family, sigma):
    params = ImpactParams(kappa=1.0, lam=2.0)
    b = make_analytic(family, sigma=sigma)
    a = best_response_generic(b, params, grid=GRID)
    b_rec = inverse_for_b(a, params, grid=GRID)
    assert np.max(np.abs(b_rec.values - b.value(GRID.points))) < 1e-4


def test_inverse_then_forward_round_trip():
    params = ImpactParams(kappa=3.0, lam=4.0)
    a = make_analytic("parabolic", c=0.4)
    b_star = inverse_for_b(a, params, grid=GRID)
    a_back = best_response_generic(b_star, params, grid=GRID)
    assert np.max(np.abs(a_back.values - a.value(GRID.points))) < 1e-6


def test_zero_permanent_impact_reduces_to_pure_curvature_matching():
    # with kappa=0 the recovered shape solves b'' = -(2/lam) a'' directly
    params = ImpactParams(kappa=0.0, lam=2.0)
    a = make_analytic("parabolic", c=0.5)
    b_star = inverse_for_b(a, params, grid=GRID)
    t = GRID.points
    # a'' = 2/(1-c) = 4, so b'' = -4 and b = (1+2)t - 2t^2 with b(1)=1
    assert np.max(np.abs(b_star.values - ((1.0 + 2.0) * t - 2.0 * t * t))) < 1e-9


def test_inverse_respects_sampled_inputs():
    from impact_games.core import sample

    params = ImpactParams(kappa=1.0, lam=2.0)
    a = make_analytic("br-risk-neutral", kappa=1.0, lam=2.0)
    exact = inverse_for_b(a, params, grid=GRID)
    sampled = inverse_for_b(sample(a, GRID), params, grid=GRID)
    assert np.max(np.abs(exact.values - sampled.values)) < 1e-7
