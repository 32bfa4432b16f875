"""Solvers for optimal position-building under competition with linear market impact."""

from impact_games.core import (
    AnalyticStrategy,
    ImpactParams,
    SampledStrategy,
    TimeGrid,
    default_grid,
    make_analytic,
    sample,
    scale_trajectory,
)
from impact_games.cost import (
    CostBreakdown,
    cumulative_cost,
    el_residual,
    instantaneous_cost,
    perm_invariance_check,
    total_cost,
)
from impact_games.best_response import (
    QAux,
    best_response_generic,
    br_to_eager,
    br_to_risk_averse,
    br_to_risk_neutral,
    brute_force_best_response,
)
from impact_games.equilibrium import (
    EquilibriumPair,
    multi_trader,
    multi_trader_limit,
    risk_equilibrium,
    two_trader,
)
from impact_games.inverse import inverse_for_a, inverse_for_b
from impact_games.analysis import (
    SelectionReport,
    SensitivityReport,
    expected_cost_lognormal,
    misestimation_row,
    selection_matrix,
    uncertainty_strategies,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticStrategy",
    "CostBreakdown",
    "EquilibriumPair",
    "ImpactParams",
    "QAux",
    "SampledStrategy",
    "SelectionReport",
    "SensitivityReport",
    "TimeGrid",
    "best_response_generic",
    "br_to_eager",
    "br_to_risk_averse",
    "br_to_risk_neutral",
    "brute_force_best_response",
    "cumulative_cost",
    "default_grid",
    "el_residual",
    "expected_cost_lognormal",
    "instantaneous_cost",
    "inverse_for_a",
    "inverse_for_b",
    "make_analytic",
    "misestimation_row",
    "multi_trader",
    "multi_trader_limit",
    "perm_invariance_check",
    "risk_equilibrium",
    "sample",
    "scale_trajectory",
    "selection_matrix",
    "total_cost",
    "two_trader",
    "uncertainty_strategies",
]
