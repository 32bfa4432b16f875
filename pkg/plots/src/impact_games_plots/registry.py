"""Named figure presets over a directory of impact-games CLI output files.

Each preset lists the files it expects (relative to the input directory) so a
full set of figures reproduces with one command per name.  Generate the files
with the impact-games tool, for example:

    impact-games equilibrium --kappa 5 --lambda 5 --output eq_k5_l5.csv
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from impact_games_plots.spec import FigureSpec, InputError


@dataclass(frozen=True)
class Preset:
    kind: str
    files: tuple[str, ...]
    title: str
    description: str


PRESETS = {
    "risk-neutral-trajectory": Preset(
        kind="trajectory",
        files=("strategy_risk_neutral.csv",),
        title="Risk-neutral build schedule",
        description="Straight-line unit strategy against the t reference.",
    ),
    "equilibrium-trajectory": Preset(
        kind="trajectory",
        files=("eq_k25_l5.csv",),
        title="Two-trader equilibrium (kappa=25, lambda=5)",
        description="Unit strategy a(t) in blue, lambda-scaled adversary in red.",
    ),
    "equilibrium-grid": Preset(
        kind="grid-panel",
        files=("eq_k0.1_l5.csv", "eq_k1_l5.csv", "eq_k5_l5.csv", "eq_k25_l5.csv"),
        title="Equilibrium pairs across impact decay (lambda=5)",
        description="2x2 panel of equilibrium pairs for kappa in {0.1, 1, 5, 25}.",
    ),
    "risk-aversion-grid": Preset(
        kind="grid-panel",
        files=("risk_xi0.csv", "risk_xi10.csv", "risk_xi50.csv", "risk_xi200.csv"),
        title="Equilibria under growing risk aversion",
        description="Panel over the unit trader's risk-aversion weight.",
    ),
    "cumulative-cost-eager": Preset(
        kind="cumulative-cost",
        files=("cost_profile_eager_parabolic.csv",),
        title="Running cost of an over-buying strategy",
        description="Cumulative cost peaks about 60% of the way through, then falls.",
    ),
    "cost-matrix": Preset(
        kind="cost-matrix-heatmap",
        files=("cost_matrix_k25_l5.csv",),
        title="B's total cost by assumed adversary count",
        description="2x2 selection matrix heatmap (kappa=25, lambda=5).",
    ),
}


def figure_names() -> tuple[str, ...]:
    return tuple(sorted(PRESETS))


def build_spec(name: str, input_dir: Path) -> FigureSpec:
    try:
        preset = PRESETS[name]
    except KeyError:
        raise InputError(f"unknown figure {name!r}; known: {', '.join(figure_names())}") from None
    inputs = tuple(Path(input_dir) / f for f in preset.files)
    return FigureSpec(kind=preset.kind, inputs=inputs, title=preset.title)
