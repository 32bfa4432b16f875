"""Time grids, closed-form strategy families and grid-sampled strategies.

Every strategy here is a position-building trajectory on [0, 1] with x(0)=0
and x(1)=1.  Analytic families carry exact value, first/second derivative and
running integral; sampled strategies carry grid values with finite-difference
derivatives.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Mapping, Union

import numpy as np

# Below these thresholds the sinh/exponential families degenerate to 0/0 and
# are replaced by their analytic limit (the risk-neutral line).
SIGMA_EPS = 1e-8
KAPPA_EPS = 1e-8

DEFAULT_GRID_ENV = "IMPACT_GAMES_GRID"
DEFAULT_N_INTERVALS = 2000


def default_grid_size() -> int:
    """Default number of grid intervals, overridable via IMPACT_GAMES_GRID."""
    raw = os.environ.get(DEFAULT_GRID_ENV)
    if raw is None:
        return DEFAULT_N_INTERVALS
    n = int(raw)
    if n < 10 or n % 2:
        raise ValueError(f"{DEFAULT_GRID_ENV} must be an even integer >= 10, got {raw}")
    return n


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid on [0, 1] with an even number of intervals."""

    n_intervals: int
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_intervals < 2 or self.n_intervals % 2:
            raise ValueError(f"n_intervals must be even and positive, got {self.n_intervals}")
        pts = self.points
        if pts.shape != (self.n_intervals + 1,):
            raise ValueError("points must have n_intervals + 1 entries")
        if pts[0] != 0.0 or pts[-1] != 1.0:
            raise ValueError("grid must span [0, 1] exactly")

    @classmethod
    def uniform(cls, n_intervals: int) -> "TimeGrid":
        pts = np.linspace(0.0, 1.0, n_intervals + 1)
        return cls(n_intervals=n_intervals, points=pts)

    @property
    def h(self) -> float:
        return 1.0 / self.n_intervals


def default_grid() -> TimeGrid:
    return TimeGrid.uniform(default_grid_size())


@dataclass(frozen=True)
class ImpactParams:
    """Market-impact and game parameters.

    kappa: permanent-to-temporary impact ratio.
    lam:   adversary target size in units of the unit trader's target.
    sigma: shape/volatility parameter of the sinh/exponential families and
           of the risk-aversion terms.
    xi_a, xi_b: risk-aversion weights of traders A and B.
    """

    kappa: float = 0.0
    lam: float = 1.0
    sigma: float = 0.0
    xi_a: float = 0.0
    xi_b: float = 0.0

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.lam <= 0:
            raise ValueError(f"lambda must be > 0, got {self.lam}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.xi_a < 0 or self.xi_b < 0:
            raise ValueError("risk-aversion weights must be >= 0")


ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class AnalyticStrategy:
    """Closed-form strategy exposing value, derivatives and running integral."""

    family: str
    params: Mapping[str, float]
    _value: ArrayFn = field(repr=False)
    _deriv: ArrayFn = field(repr=False)
    _second: ArrayFn = field(repr=False)
    _integral: ArrayFn = field(repr=False)

    def value(self, t):
        return self._value(np.asarray(t, dtype=float))

    def deriv(self, t):
        return self._deriv(np.asarray(t, dtype=float))

    def second_deriv(self, t):
        return self._second(np.asarray(t, dtype=float))

    def integral(self, t):
        return self._integral(np.asarray(t, dtype=float))


@dataclass(frozen=True, eq=False)
class SampledStrategy:
    """Strategy on a uniform grid with second-order finite-difference derivatives."""

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.shape != self.grid.points.shape:
            raise ValueError("values must align with the grid")

    @property
    def first_deriv(self) -> np.ndarray:
        # central differences interior, second-order one-sided at the ends
        return np.gradient(self.values, self.grid.h, edge_order=2)

    @property
    def second_deriv(self) -> np.ndarray:
        # central three-point stencil interior, second-order one-sided at the ends
        v = self.values
        h2 = self.grid.h**2
        d2 = np.empty_like(v)
        d2[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h2
        d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2
        d2[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h2
        return d2


Strategy = Union[AnalyticStrategy, SampledStrategy]


# ---------------------------------------------------------------------------
# family constructors


def _linear_family(family: str, params: Mapping[str, float]) -> AnalyticStrategy:
    return AnalyticStrategy(
        family=family,
        params=dict(params),
        _value=lambda t: t,
        _deriv=lambda t: np.ones_like(t),
        _second=lambda t: np.zeros_like(t),
        _integral=lambda t: 0.5 * t * t,
    )


def _risk_neutral() -> AnalyticStrategy:
    return _linear_family("risk-neutral", {})


def _risk_averse(sigma: float, family: str = "risk-averse") -> AnalyticStrategy:
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if sigma < SIGMA_EPS:
        return _linear_family(family, {"sigma": sigma})
    sh = math.sinh(sigma)
    return AnalyticStrategy(
        family=family,
        params={"sigma": sigma},
        _value=lambda t: np.sinh(sigma * t) / sh,
        _deriv=lambda t: sigma * np.cosh(sigma * t) / sh,
        _second=lambda t: sigma * sigma * np.sinh(sigma * t) / sh,
        _integral=lambda t: (np.cosh(sigma * t) - 1.0) / (sigma * sh),
    )


def _eager(sigma: float) -> AnalyticStrategy:
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if sigma < SIGMA_EPS:
        return _linear_family("eager", {"sigma": sigma})
    den = math.expm1(-sigma)  # e^{-sigma} - 1 < 0
    return AnalyticStrategy(
        family="eager",
        params={"sigma": sigma},
        _value=lambda t: np.expm1(-sigma * t) / den,
        _deriv=lambda t: -sigma * np.exp(-sigma * t) / den,
        _second=lambda t: sigma * sigma * np.exp(-sigma * t) / den,
        _integral=lambda t: (-np.expm1(-sigma * t) / sigma - t) / den,
    )


def _parabolic(c: float) -> AnalyticStrategy:
    if c == 1.0:
        raise ValueError("parabolic shape parameter c must differ from 1")
    den = 1.0 - c
    return AnalyticStrategy(
        family="parabolic",
        params={"c": c},
        _value=lambda t: t * (t - c) / den,
        _deriv=lambda t: (2.0 * t - c) / den,
        _second=lambda t: np.full_like(t, 2.0 / den),
        _integral=lambda t: (t**3 / 3.0 - c * t * t / 2.0) / den,
    )


def _best_response_closed_form(
    family: str,
    params: Mapping[str, float],
    kappa: float,
    lam: float,
    b: ArrayFn,
    db: ArrayFn,
    d2b: ArrayFn,
    B: ArrayFn,
    BB: ArrayFn,
) -> AnalyticStrategy:
    """Best response to a lambda-scaled adversary b with running integral B.

    Twice integrating the best-response equation a'' = -(lam/2)(b'' + kappa b')
    gives a(t) = -(lam/2)(b(t) + kappa B(t)) + w t, with w pinned by a(1)=1.
    BB is the running integral of B, needed for a's own running integral.
    """
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    one = np.float64(1.0)
    w = 1.0 + 0.5 * lam * (float(b(one)) + kappa * float(B(one)))
    half = 0.5 * lam
    return AnalyticStrategy(
        family=family,
        params=dict(params),
        _value=lambda t: -half * (b(t) + kappa * B(t)) + w * t,
        _deriv=lambda t: -half * (db(t) + kappa * b(t)) + w,
        _second=lambda t: -half * (d2b(t) + kappa * db(t)),
        _integral=lambda t: -half * (B(t) + kappa * BB(t)) + 0.5 * w * t * t,
    )


def _br_to_risk_averse(kappa: float, lam: float, sigma: float) -> AnalyticStrategy:
    if sigma < SIGMA_EPS:
        raise ValueError("sigma must be positive; the sigma -> 0 adversary is risk-neutral")
    sh = math.sinh(sigma)
    return _best_response_closed_form(
        "br-risk-averse",
        {"kappa": kappa, "lambda": lam, "sigma": sigma},
        kappa,
        lam,
        b=lambda t: np.sinh(sigma * t) / sh,
        db=lambda t: sigma * np.cosh(sigma * t) / sh,
        d2b=lambda t: sigma * sigma * np.sinh(sigma * t) / sh,
        B=lambda t: (np.cosh(sigma * t) - 1.0) / (sigma * sh),
        BB=lambda t: (np.sinh(sigma * t) / sigma - t) / (sigma * sh),
    )


def _br_to_risk_neutral(kappa: float, lam: float) -> AnalyticStrategy:
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    c = 0.25 * lam * kappa
    return AnalyticStrategy(
        family="br-risk-neutral",
        params={"kappa": kappa, "lambda": lam},
        _value=lambda t: (1.0 + c) * t - c * t * t,
        _deriv=lambda t: (1.0 + c) - 2.0 * c * t,
        _second=lambda t: np.full_like(t, -2.0 * c),
        _integral=lambda t: 0.5 * (1.0 + c) * t * t - c * t**3 / 3.0,
    )


def _br_to_eager(kappa: float, lam: float, sigma: float) -> AnalyticStrategy:
    if sigma < SIGMA_EPS:
        raise ValueError("sigma must be positive; the sigma -> 0 adversary is risk-neutral")
    den = math.expm1(-sigma)
    return _best_response_closed_form(
        "br-eager",
        {"kappa": kappa, "lambda": lam, "sigma": sigma},
        kappa,
        lam,
        b=lambda t: np.expm1(-sigma * t) / den,
        db=lambda t: -sigma * np.exp(-sigma * t) / den,
        d2b=lambda t: sigma * sigma * np.exp(-sigma * t) / den,
        B=lambda t: (-np.expm1(-sigma * t) / sigma - t) / den,
        BB=lambda t: (np.expm1(-sigma * t) / (sigma * sigma) + t / sigma - 0.5 * t * t) / den,
    )


def _two_trader_pair_terms(kappa: float, lam: float):
    """Shared pieces of the two-trader equilibrium closed forms.

    Both strategies are combinations of s(t) = 1 - e^{-kappa t / 3} and
    r(t) = e^{kappa t} - 1:
        a = [(lam+1) P s - (lam-1) r] / (2 (e^kappa - 1))
        b = [(lam+1) P s + (lam-1) r] / (2 (e^kappa - 1) lam)
    with P = e^{kappa/3} + e^{2 kappa/3} + e^{kappa}.
    """
    k3 = kappa / 3.0
    P = math.exp(k3) + math.exp(2.0 * k3) + math.exp(kappa)
    D = 2.0 * math.expm1(kappa)
    cp = (lam + 1.0) * P / D
    cm = (lam - 1.0) / D

    def value(sign, t):
        return cp * -np.expm1(-k3 * t) + sign * cm * np.expm1(kappa * t)

    def deriv(sign, t):
        return cp * k3 * np.exp(-k3 * t) + sign * cm * kappa * np.exp(kappa * t)

    def second(sign, t):
        return -cp * k3 * k3 * np.exp(-k3 * t) + sign * cm * kappa * kappa * np.exp(kappa * t)

    def integral(sign, t):
        return cp * (t + np.expm1(-k3 * t) / k3) + sign * cm * (np.expm1(kappa * t) / kappa - t)

    return value, deriv, second, integral


def _two_trader_strategy(kappa: float, lam: float, which: str) -> AnalyticStrategy:
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    family = "two-trader-a" if which == "a" else "two-trader-b"
    params = {"kappa": kappa, "lambda": lam}
    if kappa < KAPPA_EPS:
        return _linear_family(family, params)
    value, deriv, second, integral = _two_trader_pair_terms(kappa, lam)
    if which == "a":
        sign, scale = -1.0, 1.0
    else:
        sign, scale = 1.0, 1.0 / lam
    return AnalyticStrategy(
        family=family,
        params=params,
        _value=lambda t: scale * value(sign, t),
        _deriv=lambda t: scale * deriv(sign, t),
        _second=lambda t: scale * second(sign, t),
        _integral=lambda t: scale * integral(sign, t),
    )


def _exponential_build(c: float, family: str, params: Mapping[str, float]) -> AnalyticStrategy:
    """Strategy (1 - e^{-c t}) / (1 - e^{-c}); risk-neutral in the c -> 0 limit."""
    if c < KAPPA_EPS:
        return _linear_family(family, params)
    den = -math.expm1(-c)  # 1 - e^{-c}
    return AnalyticStrategy(
        family=family,
        params=dict(params),
        _value=lambda t: -np.expm1(-c * t) / den,
        _deriv=lambda t: c * np.exp(-c * t) / den,
        _second=lambda t: -c * c * np.exp(-c * t) / den,
        _integral=lambda t: (t + np.expm1(-c * t) / c) / den,
    )


def _multi_trader(kappa: float, n_traders: int) -> AnalyticStrategy:
    if n_traders < 2:
        raise ValueError(f"n_traders must be >= 2, got {n_traders}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    # T total traders trade the symmetric strategy with rate (T-1) kappa / (T+1)
    c = (n_traders - 1) * kappa / (n_traders + 1)
    return _exponential_build(c, "multi-trader", {"kappa": kappa, "n_traders": n_traders})


def _multi_trader_limit(kappa: float) -> AnalyticStrategy:
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    return _exponential_build(kappa, "multi-limit", {"kappa": kappa})


def _case1b_b(kappa: float, lam: float) -> AnalyticStrategy:
    """Large trader's best response when the unit trader assumes lam unit adversaries."""
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    params = {"kappa": kappa, "lambda": lam}
    g = kappa * lam / (lam + 2.0)
    if g < KAPPA_EPS:
        return _linear_family("case1b-b", params)
    eg = math.exp(g)
    den = lam * lam * (eg - 1.0)
    m = lam * lam - 1.0
    return AnalyticStrategy(
        family="case1b-b",
        params=params,
        _value=lambda t: (eg * (m * t + 1.0 - np.exp(-g * t)) - m * t) / den,
        _deriv=lambda t: (eg * (m + g * np.exp(-g * t)) - m) / den,
        _second=lambda t: -g * g * eg * np.exp(-g * t) / den,
        _integral=lambda t: (eg * (0.5 * m * t * t + t + (np.exp(-g * t) - 1.0) / g) - 0.5 * m * t * t) / den,
    )


_FAMILIES = {
    "risk-neutral": lambda **kw: _risk_neutral(),
    "risk-averse": lambda sigma, **kw: _risk_averse(sigma),
    "eager": lambda sigma, **kw: _eager(sigma),
    "parabolic": lambda c, **kw: _parabolic(c),
    "almgren-chriss": lambda sigma, **kw: _risk_averse(sigma, family="almgren-chriss"),
    "br-risk-averse": lambda kappa, lam, sigma, **kw: _br_to_risk_averse(kappa, lam, sigma),
    "br-risk-neutral": lambda kappa, lam, **kw: _br_to_risk_neutral(kappa, lam),
    "br-eager": lambda kappa, lam, sigma, **kw: _br_to_eager(kappa, lam, sigma),
    "two-trader-a": lambda kappa, lam, **kw: _two_trader_strategy(kappa, lam, "a"),
    "two-trader-b": lambda kappa, lam, **kw: _two_trader_strategy(kappa, lam, "b"),
    "multi-trader": lambda kappa, n_traders, **kw: _multi_trader(kappa, n_traders),
    "multi-limit": lambda kappa, **kw: _multi_trader_limit(kappa),
    "case1b-b": lambda kappa, lam, **kw: _case1b_b(kappa, lam),
}

FAMILY_NAMES = tuple(sorted(_FAMILIES))


def make_analytic(family: str, **params) -> AnalyticStrategy:
    """Build a closed-form strategy by family name.

    Parameter names: kappa, lam, sigma, c, n_traders (per family).
    """
    try:
        ctor = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}") from None
    try:
        return ctor(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for family {family!r}: {exc}") from None


def scale_trajectory(s: Strategy, lam: float) -> Strategy:
    """Scale a strategy's trajectory (and all derivatives) pointwise by lam."""
    if lam <= 0:
        raise ValueError(f"scale factor must be > 0, got {lam}")
    if isinstance(s, SampledStrategy):
        return SampledStrategy(grid=s.grid, values=lam * s.values)
    return AnalyticStrategy(
        family=s.family,
        params={**s.params, "scale": lam * s.params.get("scale", 1.0)},
        _value=lambda t: lam * s._value(t),
        _deriv=lambda t: lam * s._deriv(t),
        _second=lambda t: lam * s._second(t),
        _integral=lambda t: lam * s._integral(t),
    )


def sample(s: AnalyticStrategy, grid: TimeGrid) -> SampledStrategy:
    """Evaluate an analytic strategy on a grid."""
    return SampledStrategy(grid=grid, values=s.value(grid.points))
