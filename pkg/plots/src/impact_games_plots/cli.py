"""Console entry point: render named figures from impact-games output files."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from impact_games_plots.registry import PRESETS, build_spec, figure_names
from impact_games_plots.render import render
from impact_games_plots.spec import FigureSpec, InputError


@click.group()
def main():
    """Render impact-games CSV/JSON output into figures."""


@main.command("list")
def list_figures():
    """List the available figure presets."""
    for name in figure_names():
        preset = PRESETS[name]
        click.echo(f"{name:26s} [{preset.kind}] {preset.description}")


@main.command("render")
@click.argument("figure", type=str)
@click.option("--input-dir", type=click.Path(file_okay=False, exists=True), default=".", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output image path (default <figure>.png).")
def render_figure(figure, input_dir, out):
    """Render one named figure preset from files in the input directory."""
    spec = build_spec(figure, Path(input_dir))
    out = Path(out) if out else Path(f"{figure}.png")
    path = render(spec, out)
    click.echo(f"wrote {path}")


@main.command("custom")
@click.option("--kind", type=click.Choice(("trajectory", "grid-panel", "cumulative-cost", "cost-matrix-heatmap")), required=True)
@click.option("--input", "inputs", type=click.Path(dir_okay=False), multiple=True, required=True)
@click.option("--title", type=str, default="")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def render_custom(kind, inputs, title, out):
    """Render an ad-hoc figure from explicit input files."""
    spec = FigureSpec(kind=kind, inputs=tuple(Path(p) for p in inputs), title=title)
    path = render(spec, out)
    click.echo(f"wrote {path}")


def run():
    try:
        main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(2)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
