"""Strategy selection under uncertainty and parameter-sensitivity analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from impact_games.core import ImpactParams, Strategy, make_analytic
from impact_games.cost import CostBreakdown, total_cost
from impact_games.equilibrium import two_trader


@dataclass(frozen=True)
class UncertaintyStrategies:
    """The four candidate strategies when A may believe in one or many adversaries.

    a1a/b1a: two-trader equilibrium pair (A correctly assumes one adversary).
    a1b/b1b: A assumes lam unit adversaries; b1b is B's best response to a1b.
    """

    a1a: Strategy
    b1a: Strategy
    a1b: Strategy
    b1b: Strategy


def uncertainty_strategies(params: ImpactParams) -> UncertaintyStrategies:
    pair = two_trader(params)
    a1b = make_analytic("multi-trader", kappa=params.kappa, n_traders=int(round(params.lam)) + 1) \
        if float(params.lam).is_integer() else _a1b_noninteger(params)
    b1b = make_analytic("case1b-b", kappa=params.kappa, lam=params.lam)
    return UncertaintyStrategies(a1a=pair.a, b1a=pair.b, a1b=a1b, b1b=b1b)


def _a1b_noninteger(params: ImpactParams):
    # "lam adversaries" read as a continuous trader count; same exponential form
    from impact_games.core import _exponential_build

    g = params.kappa * params.lam / (params.lam + 2.0)
    return _exponential_build(g, "multi-trader", {"kappa": params.kappa, "n_traders": params.lam + 1.0})


@dataclass(frozen=True)
class SelectionReport:
    """2x2 matrix of B's total cost, rows = A's actual strategy {a1a, a1b},
    columns = B's choice {b1a, b1b}, with per-column mean and sample std."""

    matrix: np.ndarray
    col_mean: np.ndarray
    col_std: np.ndarray


def selection_matrix(params: ImpactParams) -> SelectionReport:
    s = uncertainty_strategies(params)
    rows = (s.a1a, s.a1b)
    cols = (s.b1a, s.b1b)
    matrix = np.array(
        [[total_cost(a, b, params, perspective="B").total for b in cols] for a in rows]
    )
    return SelectionReport(
        matrix=matrix,
        col_mean=matrix.mean(axis=0),
        col_std=matrix.std(axis=0, ddof=1),
    )


def expected_cost_lognormal(
    mu: float, sigma_ln: float, kappa: float, n_quad: int = 32
) -> tuple[float, float]:
    """Mean and variance of A's equilibrium trading cost over log-normal adversary size.

    The adversary size lam is log-normal with parameters (mu, sigma_ln); for
    each size the two-trader equilibrium pair at that size is priced from A's
    perspective.  Gauss-Hermite quadrature after lam = exp(mu + sqrt(2)
    sigma_ln u).
    """
    if sigma_ln < 0:
        raise ValueError(f"sigma_ln must be >= 0, got {sigma_ln}")
    if n_quad < 8:
        raise ValueError(f"n_quad must be >= 8, got {n_quad}")

    def cost_at(lam: float) -> float:
        pair = two_trader(ImpactParams(kappa=kappa, lam=lam))
        return total_cost(pair.a, pair.b, pair.params, perspective="A").total

    if sigma_ln == 0.0:
        return cost_at(float(np.exp(mu))), 0.0

    nodes, weights = np.polynomial.hermite.hermgauss(n_quad)
    lams = np.exp(mu + np.sqrt(2.0) * sigma_ln * nodes)
    costs = np.array([cost_at(lam) for lam in lams])
    w = weights / np.sqrt(np.pi)
    mean = float(w @ costs)
    second = float(w @ costs**2)
    return mean, second - mean**2


@dataclass(frozen=True)
class SensitivityReport:
    """Cost of the two-trader unit strategy at kappa vs at shrink*kappa."""

    base: CostBreakdown
    shifted: CostBreakdown
    rel_total_diff: float
    partials: dict


def _unit_vs_shape_cost(kappa: float, lam: float, price_kappa: float | None = None) -> CostBreakdown:
    """Cost of the two-trader unit strategy a(t; kappa, lam) against the
    unscaled equilibrium shape b(t; kappa, lam)."""
    pair = two_trader(ImpactParams(kappa=kappa, lam=lam))
    pricing = ImpactParams(kappa=kappa if price_kappa is None else price_kappa, lam=1.0)
    return total_cost(pair.a, pair.b, pricing, perspective="A")


def _a_cost(kappa: float, lam: float) -> CostBreakdown:
    params = ImpactParams(kappa=kappa, lam=lam)
    pair = two_trader(params)
    return total_cost(pair.a, pair.b, params, perspective="A")


def _b_cost(kappa: float, lam: float) -> CostBreakdown:
    params = ImpactParams(kappa=kappa, lam=lam)
    pair = two_trader(params)
    return total_cost(pair.a, pair.b, params, perspective="B")


def misestimation_row(
    lam: float, kappa: float, shrink: float = 0.75, fixed_truth: bool = False
) -> SensitivityReport:
    """Cost impact of shrinking kappa by the given factor (default 25% down).

    Each row prices the two-trader unit strategy a(t; kappa, lam) against the
    unscaled equilibrium shape b(t; kappa, lam).  By default both the
    strategy pair and the pricing use the shifted kappa; with
    fixed_truth=True the shifted-kappa strategies are priced under the
    original (true) kappa instead.
    """
    if kappa <= 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    base = _unit_vs_shape_cost(kappa, lam)
    if fixed_truth:
        shifted = _unit_vs_shape_cost(shrink * kappa, lam, price_kappa=kappa)
    else:
        shifted = _unit_vs_shape_cost(shrink * kappa, lam)

    dk = 1e-4 * kappa
    dl = 1e-4 * lam
    partials = {
        ("A", "kappa"): (_a_cost(kappa + dk, lam).total - _a_cost(kappa - dk, lam).total) / (2 * dk),
        ("A", "lambda"): (_a_cost(kappa, lam + dl).total - _a_cost(kappa, lam - dl).total) / (2 * dl),
        ("B", "kappa"): (_b_cost(kappa + dk, lam).total - _b_cost(kappa - dk, lam).total) / (2 * dk),
        ("B", "lambda"): (_b_cost(kappa, lam + dl).total - _b_cost(kappa, lam - dl).total) / (2 * dl),
    }
    return SensitivityReport(
        base=base,
        shifted=shifted,
        rel_total_diff=shifted.total / base.total - 1.0,
        partials=partials,
    )
