"""Best responses to a known passive adversary.

Closed forms cover risk-averse, risk-neutral and eager adversaries; the
generic solver handles any unit-shaped adversary by twice integrating the
best-response equation a'' = -(lam/2)(b'' + kappa b').  A discrete
brute-force solver of the same equation serves as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.linalg import solve_banded

from impact_games.core import (
    AnalyticStrategy,
    ImpactParams,
    SampledStrategy,
    Strategy,
    TimeGrid,
    make_analytic,
)
from impact_games.cost import resolve_grid, strategy_on_grid


@dataclass(frozen=True)
class QAux:
    """Auxiliary sinh/cosh combination behind the risk-averse best response."""

    kappa: float
    sigma: float

    def q(self, t):
        t = np.asarray(t, dtype=float)
        sh = math.sinh(self.sigma)
        return (np.sinh(self.sigma * t) + (self.kappa / self.sigma) * np.cosh(self.sigma * t)) / sh


def br_to_risk_averse(params: ImpactParams) -> AnalyticStrategy:
    """Closed-form best response to a lam-scaled risk-averse adversary."""
    return make_analytic("br-risk-averse", kappa=params.kappa, lam=params.lam, sigma=params.sigma)


def br_to_risk_neutral(params: ImpactParams) -> AnalyticStrategy:
    """Closed-form best response to a lam-scaled risk-neutral adversary."""
    return make_analytic("br-risk-neutral", kappa=params.kappa, lam=params.lam)


def br_to_eager(params: ImpactParams) -> AnalyticStrategy:
    """Closed-form best response to a lam-scaled eager adversary."""
    return make_analytic("br-eager", kappa=params.kappa, lam=params.lam, sigma=params.sigma)


def best_response_generic(
    b: Strategy, params: ImpactParams, grid: TimeGrid | None = None
) -> SampledStrategy:
    """Best response to an arbitrary unit-shaped adversary b.

    Works from b's values and running integral only, so sampled adversaries
    never need to be differentiated twice.
    """
    grid = resolve_grid(b, grid=grid)
    t = grid.points
    if isinstance(b, AnalyticStrategy):
        bv = b.value(t)
        Bv = b.integral(t)
    else:
        bv, _, _ = strategy_on_grid(b, grid)
        Bv = cumulative_simpson(bv, dx=grid.h, initial=0.0)
    lam, kappa = params.lam, params.kappa
    base = -0.5 * lam * (bv + kappa * Bv)
    # wt + z pinned by a(0)=0, a(1)=1
    z = -base[0]
    w = 1.0 - base[-1] - z
    return SampledStrategy(grid=grid, values=base + w * t + z)


def brute_force_best_response(
    b: Strategy, params: ImpactParams, grid: TimeGrid | None = None
) -> SampledStrategy:
    """Discrete oracle: solve the tridiagonal finite-difference system
    2(a_{i+1} - 2a_i + a_{i-1})/h^2 = -lam (b'' + kappa b')_i with pinned ends,
    using finite-difference derivatives of b's samples."""
    grid = resolve_grid(b, grid=grid)
    bs = b if isinstance(b, SampledStrategy) else SampledStrategy(grid, np.asarray(b.value(grid.points)))
    db, d2b = bs.first_deriv, bs.second_deriv
    lam, kappa = params.lam, params.kappa
    f = -0.5 * lam * (d2b + kappa * db)

    n = grid.n_intervals
    h2 = grid.h**2
    m = n - 1
    ab = np.zeros((3, m))
    ab[0, 1:] = 1.0 / h2
    ab[1, :] = -2.0 / h2
    ab[2, :-1] = 1.0 / h2
    rhs = f[1:-1].copy()
    rhs[-1] -= 1.0 / h2  # a(1) = 1
    interior = solve_banded((1, 1), ab, rhs)
    values = np.empty(n + 1)
    values[0], values[-1] = 0.0, 1.0
    values[1:-1] = interior
    return SampledStrategy(grid=grid, values=values)
