"""Figure rendering over impact-games command-line output."""

from impact_games_plots.registry import build_spec, figure_names
from impact_games_plots.render import render
from impact_games_plots.spec import FigureSpec, InputError, Table, load_table

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "InputError",
    "Table",
    "build_spec",
    "figure_names",
    "load_table",
    "render",
]
