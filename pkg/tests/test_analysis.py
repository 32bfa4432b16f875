"""Strategy selection, distributional costs and sensitivity to impact decay."""

import numpy as np
import pytest

from impact_games.analysis import (
    expected_cost_lognormal,
    misestimation_row,
    selection_matrix,
    uncertainty_strategies,
)
from impact_games.core import ImpactParams, TimeGrid
from impact_games.cost import total_cost
from impact_games.equilibrium import two_trader

GRID = TimeGrid.uniform(2000)


def test_candidate_strategies_pin_boundaries():
    s = uncertainty_strategies(ImpactParams(kappa=25.0, lam=5.0))
    t = np.array([0.0, 1.0])
    for strat in (s.a1a, s.b1a, s.a1b, s.b1b):
        v = strat.value(t)
        assert abs(v[0]) < 1e-12 and abs(v[1] - 1.0) < 1e-12


def test_one_vs_many_assumption_changes_the_unit_strategy():
    s = uncertainty_strategies(ImpactParams(kappa=25.0, lam=5.0))
    mid = np.linspace(0.1, 0.9, 20)
    assert np.max(np.abs(s.a1a.value(mid) - s.a1b.value(mid))) > 1e-2


def test_selection_matrix_values_at_large_decay():
    rep = selection_matrix(ImpactParams(kappa=25.0, lam=5.0))
    expected = np.array([[600.0, 658.1], [518.1, 460.2]])
    assert np.all(np.abs(rep.matrix / expected - 1.0) < 0.01)
    assert rep.col_mean[0] == pytest.approx(559.1, rel=0.01)
    assert rep.col_mean[1] == pytest.approx(559.2, rel=0.01)
    assert rep.col_std[0] == pytest.approx(57.9, rel=0.02)
    assert rep.col_std[1] == pytest.approx(139.8, rel=0.02)


def test_matched_belief_is_cheapest_within_each_row():
    rep = selection_matrix(ImpactParams(kappa=25.0, lam=5.0))
    assert rep.matrix[0, 0] < rep.matrix[0, 1]
    assert rep.matrix[1, 1] < rep.matrix[1, 0]


def test_noninteger_adversary_count_interpolates():
    s = uncertainty_strategies(ImpactParams(kappa=5.0, lam=2.5))
    mid = np.linspace(0.1, 0.9, 9)
    lo = uncertainty_strategies(ImpactParams(kappa=5.0, lam=2.0)).a1b.value(mid)
    hi = uncertainty_strategies(ImpactParams(kappa=5.0, lam=3.0)).a1b.value(mid)
    v = s.a1b.value(mid)
    assert np.all(v <= np.maximum(lo, hi) + 1e-12)
    assert np.all(v >= np.minimum(lo, hi) - 1e-12)


def test_degenerate_size_distribution_is_exact():
    mean, var = expected_cost_lognormal(np.log(5.0), 0.0, 1.0)
    pair = two_trader(ImpactParams(kappa=1.0, lam=5.0))
    direct = total_cost(pair.a, pair.b, pair.params, "A", grid=GRID).total
    assert mean == pytest.approx(direct, abs=1e-12)
    assert var == 0.0


def test_size_uncertainty_increases_expected_cost():
    # cost is convex in adversary size, so spreading the distribution raises the mean
    m0, _ = expected_cost_lognormal(np.log(5.0), 0.0, 1.0)
    m1, v1 = expected_cost_lognormal(np.log(5.0), 0.25, 1.0)
    assert m1 > m0
    assert v1 > 0


def test_quadrature_is_stable_in_node_count():
    a = expected_cost_lognormal(np.log(5.0), 0.25, 1.0, n_quad=16)
    b = expected_cost_lognormal(np.log(5.0), 0.25, 1.0, n_quad=48)
    assert a[0] == pytest.approx(b[0], rel=1e-9)
    assert a[1] == pytest.approx(b[1], rel=1e-6)


def test_lognormal_input_validation():
    with pytest.raises(ValueError):
        expected_cost_lognormal(0.0, -0.1, 1.0)
    with pytest.raises(ValueError):
        expected_cost_lognormal(0.0, 0.1, 1.0, n_quad=4)


def test_underestimating_decay_understates_cost():
    row = misestimation_row(5.0, 0.1)
    assert row.rel_total_diff == pytest.approx(-0.0128, abs=0.005)
    row = misestimation_row(5.0, 100.0)
    assert row.rel_total_diff == pytest.approx(-0.25, abs=0.005)


@pytest.mark.parametrize("lam", [5.0, 25.0])
def test_relative_understatement_saturates_at_square_of_shrink(lam):
    # shrinking kappa by 25% understates the (kappa-dominated) cost by 25%
    vals = [misestimation_row(lam, k).rel_total_diff for k in (25.0, 100.0, 200.0)]
    assert abs(vals[-1] + 0.25) < 1e-4
    assert abs(vals[-1] + 0.25) <= abs(vals[0] + 0.25) + 1e-12


def test_fixed_truth_pricing_differs_from_shifted_pricing():
    drifting = misestimation_row(5.0, 1.0)
    fixed = misestimation_row(5.0, 1.0, fixed_truth=True)
    assert drifting.base.total == pytest.approx(fixed.base.total)
    assert drifting.shifted.total != pytest.approx(fixed.shifted.total)


def test_partials_report_all_four_sensitivities():
    row = misestimation_row(5.0, 1.0)
    assert set(row.partials) == {("A", "kappa"), ("A", "lambda"), ("B", "kappa"), ("B", "lambda")}
    assert row.partials[("A", "kappa")] > 0
    assert row.partials[("A", "lambda")] > 0


def test_misestimation_rejects_nonpositive_kappa():
    with pytest.raises(ValueError):
        misestimation_row(5.0, 0.0)
