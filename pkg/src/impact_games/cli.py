"""Command-line surface: strategies, solvers and table reproductions as CSV/JSON.

Exit codes: 0 success, 2 usage or domain error, 3 numerical tolerance failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

import impact_games
from impact_games import analysis, best_response, cost, equilibrium, inverse
from impact_games.core import (
    FAMILY_NAMES,
    ImpactParams,
    SampledStrategy,
    TimeGrid,
    default_grid_size,
    make_analytic,
)

RESIDUAL_TOL = 1e-6

# kappa/lambda sweeps used by the published table reproductions
TEMP_PERM_LAMBDAS = (1.0, 3.0, 10.0, 25.0)
TEMP_PERM_KAPPAS = (0.1, 0.25, 2.5, 10.0, 25.0)
MISEST_KAPPAS = (0.1, 0.5, 1.0, 5.0, 25.0, 100.0)


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{x:.12g}"
    return str(x)


def _emit(columns, rows, meta, fmt, output):
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
        if output:
            Path(output).write_text(text)
            sidecar = Path(output).with_suffix(".meta.json")
            sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(text)
    else:
        doc = {
            "meta": meta,
            "columns": list(columns),
            "rows": [[float(_fmt(v)) if isinstance(v, (float, np.floating)) else v for v in row] for row in rows],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        if output:
            Path(output).write_text(text)
        else:
            sys.stdout.write(text)


def _meta(params: ImpactParams | None, grid: TimeGrid, **extra):
    meta = {"tool_version": impact_games.__version__, "grid_size": grid.n_intervals}
    if params is not None:
        meta["params"] = {
            "kappa": params.kappa,
            "lambda": params.lam,
            "sigma": params.sigma,
            "xi_a": params.xi_a,
            "xi_b": params.xi_b,
        }
    meta.update(extra)
    return meta


def _build_family(family, kappa, lam, sigma, c, n_traders):
    kwargs = {}
    if family in ("risk-averse", "eager", "almgren-chriss", "br-risk-averse", "br-eager"):
        kwargs["sigma"] = sigma
    if family == "parabolic":
        kwargs["c"] = c
    if family in ("br-risk-averse", "br-risk-neutral", "br-eager", "two-trader-a", "two-trader-b", "case1b-b"):
        kwargs.update(kappa=kappa, lam=lam)
    if family == "multi-trader":
        kwargs.update(kappa=kappa, n_traders=n_traders)
    if family == "multi-limit":
        kwargs["kappa"] = kappa
    return make_analytic(family, **kwargs)


def _grid_option(grid_size: int | None) -> TimeGrid:
    n = grid_size if grid_size is not None else default_grid_size()
    if n < 10 or n % 2:
        raise ValueError(f"grid size must be even and >= 10, got {n}")
    return TimeGrid.uniform(n)


def _pair_rows(grid, a, b, lam):
    t = grid.points
    av = a.values if isinstance(a, SampledStrategy) else a.value(t)
    bv = b.values if isinstance(b, SampledStrategy) else b.value(t)
    return [[t[i], av[i], bv[i], lam * bv[i]] for i in range(len(t))]


def _pair_meta(params, grid, a, b):
    cb_a = cost.total_cost(a, b, params, "A", grid=grid)
    cb_b = cost.total_cost(a, b, params, "B", grid=grid)
    res_a = float(np.max(np.abs(cost.el_residual(a, b, params, "A", grid=grid))))
    res_b = float(np.max(np.abs(cost.el_residual(a, b, params, "B", grid=grid))))
    return _meta(
        params,
        grid,
        cost_a={"temporary": cb_a.temporary, "permanent": cb_a.permanent, "total": cb_a.total},
        cost_b={"temporary": cb_b.temporary, "permanent": cb_b.permanent, "total": cb_b.total},
        max_residual={"A": res_a, "B": res_b},
    ), max(res_a, res_b)


def _check_residual(residual: float, tol: float = RESIDUAL_TOL):
    if residual > tol:
        click.echo(f"error: solver residual {residual:.3e} exceeds tolerance {tol:.1e}", err=True)
        sys.exit(3)


def _sampled_tol(strategy: SampledStrategy, kappa: float, extra_curvature: float = 0.0) -> float:
    # finite-difference truncation is h^2/12 times the fourth derivative, which
    # for the exponential-type solutions here is about kappa^2 times the curvature
    h = strategy.grid.h
    if (1.0 + kappa) * h > 0.5:
        return RESIDUAL_TOL  # grid cannot resolve the decay scale; fail loudly
    curvature = max(float(np.max(np.abs(strategy.second_deriv))), extra_curvature)
    return RESIDUAL_TOL + 0.5 * h**2 * (1.0 + kappa) ** 2 * curvature


param_options = [
    click.option("--kappa", type=float, default=0.0, show_default=True),
    click.option("--lambda", "lam", type=float, default=1.0, show_default=True),
    click.option("--sigma", type=float, default=0.0, show_default=True),
]
io_options = [
    click.option("--grid", "grid_size", type=int, default=None, help="Grid intervals (even, >= 10)."),
    click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
    click.option("--output", type=click.Path(dir_okay=False), default=None, help="Output path (default stdout)."),
]


def _add_options(opts):
    def wrap(f):
        for opt in reversed(opts):
            f = opt(f)
        return f

    return wrap


@click.group()
def main():
    """Solvers for position-building in competition under linear market impact."""


@main.command()
@click.option("--family", type=click.Choice(FAMILY_NAMES), required=True)
@_add_options(param_options)
@click.option("--c", type=float, default=0.0, help="Parabolic shape parameter (c != 1).")
@click.option("--n-traders", type=int, default=2, show_default=True)
@_add_options(io_options)
def strategy(family, kappa, lam, sigma, c, n_traders, grid_size, fmt, output):
    """Sample one closed-form strategy family on a grid."""
    grid = _grid_option(grid_size)
    s = _build_family(family, kappa, lam, sigma, c, n_traders)
    t = grid.points
    vals, d1, d2, integ = s.value(t), s.deriv(t), s.second_deriv(t), s.integral(t)
    rows = [[t[i], vals[i], d1[i], d2[i], integ[i]] for i in range(len(t))]
    meta = _meta(None, grid, family=family, family_params=dict(s.params))
    _emit(["t", "value", "deriv", "second_deriv", "integral"], rows, meta, fmt, output)


@main.command("best-response")
@click.option("--adversary", type=click.Choice(FAMILY_NAMES), default="risk-neutral", show_default=True)
@_add_options(param_options)
@click.option("--c", type=float, default=0.0)
@click.option("--n-traders", type=int, default=2)
@_add_options(io_options)
def cmd_best_response(adversary, kappa, lam, sigma, c, n_traders, grid_size, fmt, output):
    """Best response of a unit trader to a lam-scaled adversary."""
    grid = _grid_option(grid_size)
    params = ImpactParams(kappa=kappa, lam=lam, sigma=sigma)
    b = _build_family(adversary, kappa, lam, sigma, c, n_traders)
    if adversary == "risk-averse":
        a = best_response.br_to_risk_averse(params)
    elif adversary == "risk-neutral":
        a = best_response.br_to_risk_neutral(params)
    elif adversary == "eager":
        a = best_response.br_to_eager(params)
    else:
        a = best_response.best_response_generic(b, params, grid=grid)
    cb_a = cost.total_cost(a, b, params, "A", grid=grid)
    res_a = float(np.max(np.abs(cost.el_residual(a, b, params, "A", grid=grid))))
    meta = _meta(
        params,
        grid,
        adversary=adversary,
        cost_a={"temporary": cb_a.temporary, "permanent": cb_a.permanent, "total": cb_a.total},
        max_residual={"A": res_a},
    )
    _check_residual(res_a, tol=_sampled_tol(a, kappa) if isinstance(a, SampledStrategy) else RESIDUAL_TOL)
    profile = cost.cumulative_cost_profile(a, b, params, grid=grid)
    rows = [row + [profile[i]] for i, row in enumerate(_pair_rows(grid, a, b, lam))]
    _emit(["t", "a", "b", "lambda_b", "cum_cost_a"], rows, meta, fmt, output)


@main.command("cost-profile")
@click.option("--family", type=click.Choice(FAMILY_NAMES), required=True, help="Unit trader's strategy family.")
@click.option("--adversary", type=click.Choice(FAMILY_NAMES), default="risk-neutral", show_default=True)
@_add_options(param_options)
@click.option("--c", type=float, default=0.0)
@click.option("--n-traders", type=int, default=2)
@_add_options(io_options)
def cmd_cost_profile(family, adversary, kappa, lam, sigma, c, n_traders, grid_size, fmt, output):
    """Running cost of one strategy priced against a lam-scaled adversary."""
    grid = _grid_option(grid_size)
    params = ImpactParams(kappa=kappa, lam=lam, sigma=sigma)
    a = _build_family(family, kappa, lam, sigma, c, n_traders)
    b = _build_family(adversary, kappa, lam, sigma, c, n_traders)
    cb = cost.total_cost(a, b, params, "A", grid=grid)
    profile = cost.cumulative_cost_profile(a, b, params, grid=grid)
    meta = _meta(
        params,
        grid,
        family=family,
        adversary=adversary,
        cost_a={"temporary": cb.temporary, "permanent": cb.permanent, "total": cb.total},
    )
    rows = [row + [profile[i]] for i, row in enumerate(_pair_rows(grid, a, b, lam))]
    _emit(["t", "a", "b", "lambda_b", "cum_cost_a"], rows, meta, fmt, output)


@main.command("equilibrium")
@_add_options(param_options)
@_add_options(io_options)
def cmd_equilibrium(kappa, lam, sigma, grid_size, fmt, output):
    """Two-trader equilibrium pair (closed form)."""
    grid = _grid_option(grid_size)
    params = ImpactParams(kappa=kappa, lam=lam, sigma=sigma)
    pair = equilibrium.two_trader(params)
    meta, res = _pair_meta(params, grid, pair.a, pair.b)
    _check_residual(res)
    _emit(["t", "a", "b", "lambda_b"], _pair_rows(grid, pair.a, pair.b, lam), meta, fmt, output)


@main.command("risk-equilibrium")
@_add_options(param_options)
@click.option("--xi-a", type=float, default=0.0, show_default=True)
@click.option("--xi-b", type=float, default=0.0, show_default=True)
@_add_options(io_options)
def cmd_risk_equilibrium(kappa, lam, sigma, xi_a, xi_b, grid_size, fmt, output):
    """Two-trader equilibrium with risk aversion (finite-difference BVP)."""
    grid = _grid_option(grid_size)
    params = ImpactParams(kappa=kappa, lam=lam, sigma=sigma, xi_a=xi_a, xi_b=xi_b)
    pair = equilibrium.risk_equilibrium(params, grid=grid)
    r_a, r_b = equilibrium.risk_residuals(pair, grid=grid)
    res = float(max(np.max(np.abs(r_a)), np.max(np.abs(r_b))))
    cb_a = cost.total_cost(pair.a, pair.b, params, "A", grid=grid)
    cb_b = cost.total_cost(pair.a, pair.b, params, "B", grid=grid)
    meta = _meta(
        params,
        grid,
        cost_a={"temporary": cb_a.temporary, "permanent": cb_a.permanent, "total": cb_a.total},
        cost_b={"temporary": cb_b.temporary, "permanent": cb_b.permanent, "total": cb_b.total},
        max_residual={"risk_equations": res},
    )
    _check_residual(res)
    _emit(["t", "a", "b", "lambda_b"], _pair_rows(grid, pair.a, pair.b, lam), meta, fmt, output)


def _inverse_command(name, solver, given_col, docstring):
    @main.command(name, help=docstring)
    @click.option("--family", type=click.Choice(FAMILY_NAMES), required=True, help="Given strategy family.")
    @_add_options(param_options)
    @click.option("--c", type=float, default=0.0)
    @click.option("--n-traders", type=int, default=2)
    @_add_options(io_options)
    def cmd(family, kappa, lam, sigma, c, n_traders, grid_size, fmt, output):
        grid = _grid_option(grid_size)
        params = ImpactParams(kappa=kappa, lam=lam, sigma=sigma)
        given = _build_family(family, kappa, lam, sigma, c, n_traders)
        solved = solver(given, params, grid=grid)
        if name == "inverse-b":
            a, b, side = given, solved, "A"
        else:
            a, b, side = solved, given, "B"
        cb = cost.total_cost(a, b, params, side, grid=grid)
        res = float(np.max(np.abs(cost.el_residual(a, b, params, side, grid=grid))))
        meta = _meta(
            params,
            grid,
            given=given_col,
            cost={"perspective": side, "temporary": cb.temporary, "permanent": cb.permanent, "total": cb.total},
            max_residual={side: res},
        )
        given_curv = float(np.max(np.abs(given.second_deriv(grid.points))))
        _check_residual(res, tol=_sampled_tol(solved, kappa, extra_curvature=given_curv))
        _emit(["t", "a", "b", "lambda_b"], _pair_rows(grid, a, b, lam), meta, fmt, output)

    return cmd


_inverse_command(
    "inverse-b",
    inverse.inverse_for_b,
    "a",
    "Recover the adversary shape for which the given unit strategy is optimal.",
)
_inverse_command(
    "inverse-a",
    inverse.inverse_for_a,
    "b",
    "Recover the unit strategy for which the given lam-scaled shape is optimal.",
)


@main.command("tables")
@click.argument("which", type=click.Choice(["cost-matrix", "misestimation", "temp-perm"]))
@_add_options(param_options)
@click.option("--fixed-truth", is_flag=True, help="Price shifted-kappa strategies under the true kappa.")
@_add_options(io_options)
def cmd_tables(which, kappa, lam, sigma, fixed_truth, grid_size, fmt, output):
    """Reproduce the published cost tables (recomputed by quadrature)."""
    grid = _grid_option(grid_size)
    if which == "cost-matrix":
        params = ImpactParams(kappa=kappa, lam=lam)
        rep = analysis.selection_matrix(params)
        rows = [
            ["a1a", rep.matrix[0, 0], rep.matrix[0, 1]],
            ["a1b", rep.matrix[1, 0], rep.matrix[1, 1]],
            ["avg", rep.col_mean[0], rep.col_mean[1]],
            ["std", rep.col_std[0], rep.col_std[1]],
        ]
        meta = _meta(params, grid, table="cost-matrix")
        _emit(["row", "b1a", "b1b"], rows, meta, fmt, output)
    elif which == "misestimation":
        rows = []
        for k in MISEST_KAPPAS:
            rep = analysis.misestimation_row(lam, k, fixed_truth=fixed_truth)
            rows.append(
                [
                    lam,
                    k,
                    rep.base.temporary,
                    rep.base.permanent,
                    rep.base.total,
                    rep.shifted.temporary,
                    rep.shifted.permanent,
                    rep.shifted.total,
                    rep.rel_total_diff,
                ]
            )
        meta = _meta(None, grid, table="misestimation", lam=lam, fixed_truth=fixed_truth)
        _emit(
            ["lambda", "kappa", "temp", "perm", "total", "shifted_temp", "shifted_perm", "shifted_total", "rel_total_diff"],
            rows,
            meta,
            fmt,
            output,
        )
    else:  # temp-perm: best-response and risk-neutral vs an eager adversary
        sig = sigma if sigma > 0 else 4.0
        rn = make_analytic("risk-neutral")
        adversary = make_analytic("eager", sigma=sig)
        rows = []
        for lmb in TEMP_PERM_LAMBDAS:
            for k in TEMP_PERM_KAPPAS:
                p = ImpactParams(kappa=k, lam=lmb, sigma=sig)
                br = best_response.br_to_eager(p)
                cb_br = cost.total_cost(br, adversary, p, "A", grid=grid)
                cb_rn = cost.total_cost(rn, adversary, p, "A", grid=grid)
                rows.append(
                    [lmb, k, cb_br.temporary, cb_br.permanent, cb_br.total, cb_rn.temporary, cb_rn.permanent, cb_rn.total]
                )
        meta = _meta(None, grid, table="temp-perm", sigma=sig)
        _emit(
            ["lambda", "kappa", "br_temp", "br_perm", "br_total", "rn_temp", "rn_perm", "rn_total"],
            rows,
            meta,
            fmt,
            output,
        )


@main.command("expected-cost")
@click.option("--mu", type=float, required=True, help="Log-normal location parameter of adversary size.")
@click.option("--sigma-ln", type=float, default=0.25, show_default=True)
@click.option("--kappa", type=float, default=1.0, show_default=True)
@click.option("--n-quad", type=int, default=32, show_default=True)
@click.option("--mc-check", is_flag=True, help="Cross-check with Monte Carlo sampling.")
@click.option("--mc-draws", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_add_options(io_options)
def cmd_expected_cost(mu, sigma_ln, kappa, n_quad, mc_check, mc_draws, seed, grid_size, fmt, output):
    """Expected equilibrium cost over a log-normal adversary-size distribution."""
    grid = _grid_option(grid_size)
    mean, var = analysis.expected_cost_lognormal(mu, sigma_ln, kappa, n_quad=n_quad)
    rows = [["gauss-hermite", mean, var]]
    if mc_check:
        rng = np.random.default_rng(seed)
        lams = np.exp(rng.normal(mu, sigma_ln, size=mc_draws))
        from impact_games.equilibrium import two_trader

        costs = np.empty(mc_draws)
        # cost is smooth in lam; evaluate on a dense interpolation grid
        lam_grid = np.linspace(lams.min(), lams.max(), 512)
        cost_grid = []
        for lmb in lam_grid:
            pair = two_trader(ImpactParams(kappa=kappa, lam=lmb))
            cost_grid.append(cost.total_cost(pair.a, pair.b, pair.params, "A").total)
        costs = np.interp(lams, lam_grid, np.array(cost_grid))
        rows.append(["monte-carlo", float(costs.mean()), float(costs.var(ddof=1))])
    meta = _meta(None, grid, mu=mu, sigma_ln=sigma_ln, kappa=kappa, n_quad=n_quad, seed=seed)
    _emit(["method", "mean", "variance"], rows, meta, fmt, output)


def run():
    try:
        main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(2)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
