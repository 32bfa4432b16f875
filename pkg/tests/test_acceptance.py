"""Top-level acceptance checks, one printed pass/fail line per criterion."""

import numpy as np
import pytest

from impact_games.analysis import (
    expected_cost_lognormal,
    misestimation_row,
    selection_matrix,
)
from impact_games.best_response import (
    brute_force_best_response,
    br_to_eager,
    br_to_risk_averse,
    br_to_risk_neutral,
)
from impact_games.core import FAMILY_NAMES, ImpactParams, TimeGrid, make_analytic
from impact_games.cost import el_residual, perm_invariance_check, simpson_weights, total_cost
from impact_games.equilibrium import multi_trader, risk_equilibrium, two_trader
from impact_games.inverse import inverse_for_b

GRID = TimeGrid.uniform(2000)
KAPPAS = (0.1, 1.0, 5.0, 25.0)
LAMS = (1.0, 5.0, 25.0)


def report(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def build_any(family):
    kwargs = {}
    if family in ("risk-averse", "eager", "almgren-chriss", "br-risk-averse", "br-eager"):
        kwargs["sigma"] = 2.0
    if family == "parabolic":
        kwargs["c"] = 0.5
    if family in ("br-risk-averse", "br-risk-neutral", "br-eager", "two-trader-a", "two-trader-b", "case1b-b"):
        kwargs.update(kappa=2.0, lam=3.0)
    if family == "multi-trader":
        kwargs.update(kappa=2.0, n_traders=4)
    if family == "multi-limit":
        kwargs["kappa"] = 2.0
    return make_analytic(family, **kwargs)


def test_boundaries_and_equilibrium_residuals():
    worst_bc = 0.0
    for family in FAMILY_NAMES:
        s = build_any(family)
        ends = s.value(np.array([0.0, 1.0]))
        worst_bc = max(worst_bc, abs(ends[0]), abs(ends[1] - 1.0))
    worst_res = 0.0
    t = GRID.points
    for kappa in KAPPAS:
        for lam in LAMS:
            params = ImpactParams(kappa=kappa, lam=lam)
            pair = two_trader(params)
            for which in ("A", "B"):
                r = el_residual(pair.a, pair.b, params, which, grid=GRID)
                worst_res = max(worst_res, float(np.max(np.abs(r))))
            n = int(lam) + 1
            mt = multi_trader(n, kappa)
            r = (n + 1) * mt.second_deriv(t) + (n - 1) * kappa * mt.deriv(t)
            worst_res = max(worst_res, float(np.max(np.abs(r[1:-1]))))
    ok = worst_bc < 1e-12 and worst_res < 1e-6
    report(
        "boundary pins 1e-12 and equilibrium residuals 1e-6 on 2001-point grid",
        ok,
        f"bc={worst_bc:.2e} res={worst_res:.2e}",
    )


def test_brute_force_oracle_matches_closed_forms():
    grid = TimeGrid.uniform(500)
    worst = 0.0
    for kappa in (0.1, 1.0, 5.0):
        for lam in LAMS:
            cases = [
                (make_analytic("risk-averse", sigma=1.0), br_to_risk_averse(ImpactParams(kappa=kappa, lam=lam, sigma=1.0))),
                (make_analytic("risk-neutral"), br_to_risk_neutral(ImpactParams(kappa=kappa, lam=lam))),
                (make_analytic("eager", sigma=4.0), br_to_eager(ImpactParams(kappa=kappa, lam=lam, sigma=4.0))),
            ]
            for b, closed in cases:
                oracle = brute_force_best_response(b, ImpactParams(kappa=kappa, lam=lam), grid=grid)
                worst = max(worst, float(np.max(np.abs(oracle.values - closed.value(grid.points)))))
    ok = worst < 1e-3
    report("discrete oracle matches closed-form best responses within 1e-3", ok, f"sup={worst:.2e}")


def test_selection_cost_matrix_at_large_decay():
    rep = selection_matrix(ImpactParams(kappa=25.0, lam=5.0))
    expected = np.array([[600.0, 658.1], [518.1, 460.2]])
    cell_err = float(np.max(np.abs(rep.matrix / expected - 1.0)))
    mean_err = float(np.max(np.abs(rep.col_mean / np.array([559.1, 559.2]) - 1.0)))
    std_err = float(np.max(np.abs(rep.col_std / np.array([57.9, 139.8]) - 1.0)))
    ok = cell_err < 0.01 and mean_err < 0.01 and std_err < 0.02
    report(
        "cost matrix [[600.0,658.1],[518.1,460.2]] within 1% (2% stds)",
        ok,
        f"cell={cell_err:.3%} mean={mean_err:.3%} std={std_err:.3%}",
    )


def test_temporary_cost_identity():
    a = make_analytic("risk-neutral")
    shapes = [
        make_analytic("risk-neutral"),
        make_analytic("risk-averse", sigma=1.0),
        make_analytic("eager", sigma=4.0),
        make_analytic("two-trader-b", kappa=5.0, lam=3.0),
    ]
    worst = 0.0
    for lam in (1.0, 3.0, 10.0, 25.0):
        for b in shapes:
            cb = total_cost(a, b, ImpactParams(kappa=0.0, lam=lam), "A", grid=GRID)
            worst = max(worst, abs(cb.temporary - (1.0 + lam)))
    ok = worst < 1e-9
    report("linear trader temporary cost is exactly 1 + lam", ok, f"err={worst:.2e}")


def test_misestimation_rows_and_asymptote():
    r_small = misestimation_row(5.0, 0.1).rel_total_diff
    r_large = misestimation_row(5.0, 100.0).rel_total_diff
    ok_rows = abs(r_small + 0.0128) < 0.005 and abs(r_large + 0.25) < 0.005
    ok_asym = True
    for lam in (5.0, 25.0):
        tail = [misestimation_row(lam, k).rel_total_diff for k in (25.0, 50.0, 100.0)]
        ok_asym = ok_asym and abs(tail[-1] + 0.25) < 1e-3 and abs(tail[-1] + 0.25) <= abs(tail[0] + 0.25) + 1e-12
    report(
        "mis-estimation rel diff -1.28% at kappa=0.1 and -25.00% at kappa=100, asymptote for lam in {5,25}",
        ok_rows and ok_asym,
        f"k0.1={r_small:.4f} k100={r_large:.4f}",
    )


def test_consistency_identities():
    t = GRID.points
    d_multi = 0.0
    for kappa in KAPPAS:
        d_multi = max(
            d_multi,
            float(np.max(np.abs(multi_trader(2, kappa).value(t) - two_trader(ImpactParams(kappa=kappa, lam=1.0)).a.value(t)))),
        )
    pair0 = two_trader(ImpactParams(kappa=1e-12, lam=7.0))
    d_k0 = float(max(np.max(np.abs(pair0.a.value(t) - t)), np.max(np.abs(pair0.b.value(t) - t))))
    params = ImpactParams(kappa=2.0, lam=3.0, sigma=0.5)
    risk0 = risk_equilibrium(params, grid=GRID)
    closed = two_trader(params)
    d_risk = float(
        max(np.max(np.abs(risk0.a.values - closed.a.value(t))), np.max(np.abs(risk0.b.values - closed.b.value(t))))
    )
    perm_ok = all(perm_invariance_check(2.0, k) for k in (0.0, 1.0, 10.0))
    ok = d_multi < 1e-12 and d_k0 < 1e-6 and d_risk < 1e-6 and perm_ok
    report(
        "consistency: multi(2)==two(lam=1), kappa->0 linear, risk(xi=0)==closed form, permanent-impact invariance",
        ok,
        f"multi={d_multi:.1e} k0={d_k0:.1e} risk={d_risk:.1e} perm={perm_ok}",
    )


def test_inverse_round_trips():
    from impact_games.best_response import best_response_generic

    t = GRID.points
    params = ImpactParams(kappa=5.0, lam=5.0)
    pair = two_trader(params)
    d_eq = float(np.max(np.abs(inverse_for_b(pair.a, params, grid=GRID).values - pair.b.value(t))))
    params2 = ImpactParams(kappa=1.0, lam=2.0)
    b = make_analytic("risk-averse", sigma=2.0)
    a = best_response_generic(b, params2, grid=GRID)
    d_rt = float(np.max(np.abs(inverse_for_b(a, params2, grid=GRID).values - b.value(t))))
    ok = d_eq < 1e-6 and d_rt < 1e-4
    report("inverse round trips: equilibrium 1e-6, forward-inverse 1e-4", ok, f"eq={d_eq:.1e} rt={d_rt:.1e}")


def test_equilibrium_stationarity_under_perturbation():
    t = GRID.points
    w = simpson_weights(GRID)
    rng = np.random.default_rng(0)
    worst_first = 0.0
    min_second = np.inf
    checked = 0
    for kappa, lam in ((1.0, 1.0), (5.0, 5.0), (25.0, 5.0)):
        pair = two_trader(ImpactParams(kappa=kappa, lam=lam))
        av, da = pair.a.value(t), pair.a.deriv(t)
        bv, db = pair.b.value(t), pair.b.deriv(t)

        def cost_of(vals, derivs):
            return float(w @ ((derivs + lam * db) * derivs + kappa * (vals + lam * bv) * derivs))

        c0 = cost_of(av, da)
        for _ in range(7):
            coefs = rng.normal(size=4)
            modes = np.arange(1, 5)
            pert = sum(c * np.sin(m * np.pi * t) for c, m in zip(coefs, modes))
            dpert = sum(c * m * np.pi * np.cos(m * np.pi * t) for c, m in zip(coefs, modes))
            scale = max(1.0, float(np.max(np.abs(pert))))
            pert, dpert = pert / scale, dpert / scale
            eps = 1e-3
            cp = cost_of(av + eps * pert, da + eps * dpert)
            cm = cost_of(av - eps * pert, da - eps * dpert)
            worst_first = max(worst_first, abs(cp - cm) / (2 * eps))
            min_second = min(min_second, cp - 2 * c0 + cm)
            checked += 1
    ok = checked >= 20 and worst_first < 1e-5 and min_second >= 0.0
    report(
        "Nash stationarity: 20+ perturbations, first order < 1e-5, second difference >= 0",
        ok,
        f"first={worst_first:.1e} second_min={min_second:.1e}",
    )


def test_lognormal_expected_cost():
    mu, sig = np.log(5.0), 0.25
    m0, v0 = expected_cost_lognormal(mu, 0.0, 1.0)
    pair = two_trader(ImpactParams(kappa=1.0, lam=5.0))
    direct = total_cost(pair.a, pair.b, pair.params, "A", grid=GRID).total
    exact_ok = abs(m0 - direct) < 1e-12 and v0 == 0.0

    mean, _ = expected_cost_lognormal(mu, sig, 1.0)
    rng = np.random.default_rng(42)
    lams = np.exp(rng.normal(mu, sig, 100_000))
    lam_grid = np.linspace(float(lams.min()), float(lams.max()), 400)
    costs = []
    for lam in lam_grid:
        p = two_trader(ImpactParams(kappa=1.0, lam=lam))
        costs.append(total_cost(p.a, p.b, p.params, "A", grid=GRID).total)
    mc = np.interp(lams, lam_grid, np.array(costs))
    se = float(mc.std(ddof=1) / np.sqrt(len(mc)))
    z = abs(mean - float(mc.mean())) / se
    ok = exact_ok and z < 3.0
    report("log-normal expected cost: degenerate exact, quadrature within 3 SE of MC", ok, f"z={z:.2f}")
