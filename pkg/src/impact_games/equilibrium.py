"""Two-trader and multi-trader equilibria, with and without risk aversion.

The risk-free two-trader equilibrium and the symmetric multi-trader
equilibrium are exact closed forms; the risk-averse two-trader equilibrium is
a coupled linear boundary-value problem solved by finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse
from scipy.sparse.linalg import spsolve

from impact_games.core import (
    AnalyticStrategy,
    ImpactParams,
    SampledStrategy,
    Strategy,
    TimeGrid,
    default_grid,
    make_analytic,
)


@dataclass(frozen=True)
class EquilibriumPair:
    """Unit strategy a and unit-shaped b (B's trajectory is lam * b)."""

    a: Strategy
    b: Strategy
    params: ImpactParams


def two_trader(params: ImpactParams) -> EquilibriumPair:
    """Closed-form two-trader equilibrium for a unit A and lam-scaled B."""
    a = make_analytic("two-trader-a", kappa=params.kappa, lam=params.lam)
    b = make_analytic("two-trader-b", kappa=params.kappa, lam=params.lam)
    return EquilibriumPair(a=a, b=b, params=params)


def multi_trader(n_traders: int, kappa: float) -> AnalyticStrategy:
    """Symmetric equilibrium strategy when n_traders unit traders compete."""
    return make_analytic("multi-trader", kappa=kappa, n_traders=n_traders)


def multi_trader_limit(kappa: float) -> AnalyticStrategy:
    """Limit of the symmetric equilibrium as the number of traders grows."""
    return make_analytic("multi-limit", kappa=kappa)


def risk_equilibrium(params: ImpactParams, grid: TimeGrid | None = None) -> EquilibriumPair:
    """Two-trader equilibrium with risk-aversion terms xi_a, xi_b and volatility sigma.

    The coupled equations
        a'' = -(lam/2)(b'' + kappa b') + xi_a sigma^2 a
        b'' = -(1/(2 lam))(a'' + kappa a') + (xi_b / lam^2) sigma^2 b
    are rearranged into explicit (a'', b'') form (the 2x2 coefficient matrix
    [[2, lam], [1, 2 lam]] has determinant 3 lam > 0), discretized with
    central differences and solved as one sparse linear system.
    """
    grid = grid if grid is not None else default_grid()
    lam, kappa, sig2 = params.lam, params.kappa, params.sigma**2
    n = grid.n_intervals
    h = grid.h
    m = n - 1

    # explicit form:
    # a'' - (kappa/3) a' + (2 lam kappa/3) b' - (4 xi_a sig2/3) a + (2 xi_b sig2/(3 lam)) b = 0
    # b'' + (2 kappa/(3 lam)) a' - (kappa/3) b' + (2 xi_a sig2/(3 lam)) a - (4 xi_b sig2/(3 lam^2)) b = 0
    pa_a, pa_b = -kappa / 3.0, 2.0 * lam * kappa / 3.0
    qa_a, qa_b = -4.0 * params.xi_a * sig2 / 3.0, 2.0 * params.xi_b * sig2 / (3.0 * lam)
    pb_a, pb_b = 2.0 * kappa / (3.0 * lam), -kappa / 3.0
    qb_a, qb_b = 2.0 * params.xi_a * sig2 / (3.0 * lam), -4.0 * params.xi_b * sig2 / (3.0 * lam**2)

    inv_h2 = 1.0 / h**2
    inv_2h = 1.0 / (2.0 * h)

    mat = scipy.sparse.lil_matrix((2 * m, 2 * m))
    rhs = np.zeros(2 * m)

    def fill(row, p_self, p_other, q_self, q_other, self_off, other_off):
        for i in range(m):
            r = row + i
            mat[r, self_off + i] = -2.0 * inv_h2 + q_self
            mat[r, other_off + i] = q_other
            if i > 0:
                mat[r, self_off + i - 1] = inv_h2 - p_self * inv_2h
                mat[r, other_off + i - 1] = -p_other * inv_2h
            if i < m - 1:
                mat[r, self_off + i + 1] = inv_h2 + p_self * inv_2h
                mat[r, other_off + i + 1] = p_other * inv_2h
            if i == m - 1:  # right boundary: self = 1, other = 1
                rhs[r] -= (inv_h2 + p_self * inv_2h) * 1.0
                rhs[r] -= p_other * inv_2h * 1.0

    fill(0, pa_a, pa_b, qa_a, qa_b, self_off=0, other_off=m)
    fill(m, pb_b, pb_a, qb_b, qb_a, self_off=m, other_off=0)

    sol = spsolve(mat.tocsr(), rhs)
    a_vals = np.concatenate(([0.0], sol[:m], [1.0]))
    b_vals = np.concatenate(([0.0], sol[m:], [1.0]))
    a = SampledStrategy(grid=grid, values=a_vals)
    b = SampledStrategy(grid=grid, values=b_vals)
    return EquilibriumPair(a=a, b=b, params=params)


def risk_residuals(pair: EquilibriumPair, grid: TimeGrid | None = None):
    """Interior residuals of the two risk-augmented equilibrium equations."""
    from impact_games.cost import resolve_grid, strategy_on_grid

    grid = resolve_grid(pair.a, pair.b, grid=grid)
    p = pair.params
    va, da, d2a = strategy_on_grid(pair.a, grid)
    vb, db, d2b = strategy_on_grid(pair.b, grid)
    sig2 = p.sigma**2
    r_a = d2a + 0.5 * p.lam * (d2b + p.kappa * db) - p.xi_a * sig2 * va
    r_b = d2b + 0.5 / p.lam * (d2a + p.kappa * da) - p.xi_b / p.lam**2 * sig2 * vb
    return r_a[1:-1], r_b[1:-1]
