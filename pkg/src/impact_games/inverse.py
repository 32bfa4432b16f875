"""Inverse problem: which adversary makes a given strategy the best response?

Both directions reduce to a first-order linear ODE in the unknown trading
rate, solved exactly with an integrating factor e^{kappa t} plus quadrature;
the single free constant is pinned by the unit terminal condition.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import cumulative_simpson

from impact_games.core import (
    AnalyticStrategy,
    ImpactParams,
    KAPPA_EPS,
    SampledStrategy,
    Strategy,
    TimeGrid,
)
from impact_games.cost import resolve_grid, strategy_on_grid


def _second_deriv_on(s: Strategy, grid: TimeGrid) -> np.ndarray:
    _, _, d2 = strategy_on_grid(s, grid)
    return d2


def _integrating_factor_solve(forcing: np.ndarray, kappa: float, grid: TimeGrid) -> SampledStrategy:
    """Solve v' + kappa v = forcing, x = int v, x(0)=0, x(1)=1 for x."""
    t = grid.points
    decay = np.exp(-kappa * t)
    # particular rate with v_p(0) = 0: v_p = e^{-kt} int_0^t forcing e^{ks} ds
    v_p = decay * cumulative_simpson(forcing * np.exp(kappa * t), dx=grid.h, initial=0.0)
    part = cumulative_simpson(v_p, dx=grid.h, initial=0.0)
    if kappa < KAPPA_EPS:
        hom = t
    else:
        hom = -np.expm1(-kappa * t) / kappa  # int_0^t e^{-ks} ds
    v0 = (1.0 - part[-1]) / hom[-1]
    return SampledStrategy(grid=grid, values=part + v0 * hom)


def inverse_for_b(a: Strategy, params: ImpactParams, grid: TimeGrid | None = None) -> SampledStrategy:
    """Adversary shape b* for which the unit strategy a is the best response.

    Solves b*'' = -(1/lam)(2 a'' + kappa lam b*') with b*(0)=0, b*(1)=1.
    """
    grid = resolve_grid(a, grid=grid)
    d2a = _second_deriv_on(a, grid)
    return _integrating_factor_solve(-2.0 / params.lam * d2a, params.kappa, grid)


def inverse_for_a(b: Strategy, params: ImpactParams, grid: TimeGrid | None = None) -> SampledStrategy:
    """Unit strategy a* for which the lam-scaled b is the best response.

    Solves a*'' = -(2 lam b'' + kappa a*') with a*(0)=0, a*(1)=1.
    """
    grid = resolve_grid(b, grid=grid)
    d2b = _second_deriv_on(b, grid)
    return _integrating_factor_solve(-2.0 * params.lam * d2b, params.kappa, grid)
