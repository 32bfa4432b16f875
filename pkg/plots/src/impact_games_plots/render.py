"""Draw figure specs onto files.  No mathematics happens here."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from impact_games_plots.spec import FigureSpec, InputError, ROLE_STYLES, Table, load_table


def _panel_title(table: Table) -> str:
    if table.meta and "params" in table.meta:
        p = table.meta["params"]
        return f"kappa={p.get('kappa')}, lambda={p.get('lambda')}"
    return table.path.stem


def _draw_trajectory(ax, table: Table, styling: dict):
    t = table.column("t")
    if "a" in table.columns:
        ax.plot(t, table.column("a"), **{**ROLE_STYLES["unit"], **styling.get("unit", {})})
        adv = "lambda_b" if "lambda_b" in table.columns else "b"
        ax.plot(t, table.column(adv), **{**ROLE_STYLES["adversary"], **styling.get("adversary", {})})
    elif "value" in table.columns:
        ax.plot(t, table.column("value"), **{**ROLE_STYLES["unit"], **styling.get("unit", {})})
    else:
        raise InputError(f"{table.path}: expected an 'a' or 'value' column for a trajectory")
    ax.plot(t, t, **ROLE_STYLES["reference"])
    ax.set_xlabel("t")
    ax.set_ylabel("position")


def _render_trajectory(spec: FigureSpec, fig):
    ax = fig.subplots()
    _draw_trajectory(ax, load_table(spec.inputs[0]), spec.styling)
    ax.legend(loc="best", fontsize=8)


def _render_grid_panel(spec: FigureSpec, fig):
    n = len(spec.inputs)
    ncols = math.ceil(math.sqrt(n))
    nrows = math.ceil(n / ncols)
    axes = fig.subplots(nrows, ncols, squeeze=False)
    for idx, path in enumerate(spec.inputs):
        ax = axes[idx // ncols][idx % ncols]
        table = load_table(path)
        _draw_trajectory(ax, table, spec.styling)
        ax.set_title(_panel_title(table), fontsize=9)
    for idx in range(n, nrows * ncols):
        axes[idx // ncols][idx % ncols].axis("off")
    axes[0][0].legend(loc="best", fontsize=7)


def _render_cumulative_cost(spec: FigureSpec, fig):
    ax = fig.subplots()
    for path in spec.inputs:
        table = load_table(path)
        t = table.column("t")
        series = "cum_cost_a" if "cum_cost_a" in table.columns else None
        if series is None:
            raise InputError(f"{table.path}: missing column 'cum_cost_a'")
        style = dict(ROLE_STYLES["cost"])
        if len(spec.inputs) > 1:
            style.pop("color", None)
            style["label"] = _panel_title(table)
        ax.plot(t, table.column(series), **style)
    ax.set_xlabel("t")
    ax.set_ylabel("cumulative cost")
    ax.legend(loc="best", fontsize=8)


def _render_cost_matrix(spec: FigureSpec, fig):
    table = load_table(spec.inputs[0])
    if not table.labels:
        raise InputError(f"{table.path}: expected a leading label column (row)")
    data_rows = [i for i, lab in enumerate(table.labels) if lab not in ("avg", "std")]
    matrix = table.rows[data_rows]
    ax = fig.subplots()
    im = ax.imshow(matrix, cmap="viridis")
    ax.set_xticks(range(len(table.columns)), table.columns)
    ax.set_yticks(range(len(data_rows)), [table.labels[i] for i in data_rows])
    for i in range(matrix.shape[0]):
        for j in range(matrix.shape[1]):
            ax.text(j, i, f"{matrix[i, j]:.1f}", ha="center", va="center", color="white")
    fig.colorbar(im, ax=ax, label="total cost of B")


_RENDERERS = {
    "trajectory": _render_trajectory,
    "grid-panel": _render_grid_panel,
    "cumulative-cost": _render_cumulative_cost,
    "cost-matrix-heatmap": _render_cost_matrix,
}


def render(spec: FigureSpec, out_path) -> Path:
    """Render one figure spec to a PNG/SVG/PDF file and return its path."""
    out_path = Path(out_path)
    fig = plt.figure(figsize=spec.styling.get("figsize", (6.0, 4.5)))
    try:
        _RENDERERS[spec.kind](spec, fig)
        if spec.title:
            fig.suptitle(spec.title)
        fig.tight_layout()
        out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path, dpi=spec.styling.get("dpi", 150))
    finally:
        plt.close(fig)
    return out_path
