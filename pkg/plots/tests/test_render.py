"""Smoke tests: every figure kind renders from the committed fixtures."""

import hashlib
from pathlib import Path

import numpy as np
import pytest

from impact_games_plots.registry import PRESETS, build_spec, figure_names
from impact_games_plots.render import render
from impact_games_plots.spec import FigureSpec, InputError, load_table

FIXTURES = Path(__file__).parent / "fixtures"


def file_hash(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@pytest.mark.parametrize("name", figure_names())
def test_every_preset_renders_without_error(name, tmp_path):
    spec = build_spec(name, FIXTURES)
    out = render(spec, tmp_path / f"{name}.png")
    assert out.exists()
    assert out.stat().st_size > 1000


@pytest.mark.parametrize(
    "name", [n for n in figure_names() if PRESETS[n].kind in ("trajectory", "grid-panel")]
)
def test_trajectory_data_is_pinned_at_the_corners(name):
    spec = build_spec(name, FIXTURES)
    for path in spec.inputs:
        table = load_table(path)
        t = table.column("t")
        value_col = "a" if "a" in table.columns else "value"
        v = table.column(value_col)
        assert t[0] == 0.0 and t[-1] == 1.0
        assert v[0] == pytest.approx(0.0, abs=1e-9)
        assert v[-1] == pytest.approx(1.0, abs=1e-9)


def test_risk_neutral_fixture_is_the_straight_line():
    table = load_table(FIXTURES / "strategy_risk_neutral.csv")
    assert np.allclose(table.column("value"), table.column("t"), atol=1e-9)


def test_cumulative_cost_fixture_peaks_then_falls():
    table = load_table(FIXTURES / "cost_profile_eager_parabolic.csv")
    t = table.column("t")
    c = table.column("cum_cost_a")
    peak = int(np.argmax(c))
    assert t[peak] == pytest.approx(0.6, abs=0.05)
    assert c[-1] < c[peak]


def test_rendering_leaves_inputs_untouched(tmp_path):
    spec = build_spec("equilibrium-grid", FIXTURES)
    before = {p: file_hash(p) for p in spec.inputs}
    render(spec, tmp_path / "grid.png")
    assert {p: file_hash(p) for p in spec.inputs} == before


def test_json_inputs_parse_like_csv(tmp_path):
    csv_table = load_table(FIXTURES / "eq_k5_l5.csv")
    json_table = load_table(FIXTURES / "eq_k5_l5.json")
    assert json_table.columns == csv_table.columns
    assert json_table.meta is not None
    spec = FigureSpec(kind="trajectory", inputs=(FIXTURES / "eq_k5_l5.json",))
    assert render(spec, tmp_path / "j.png").exists()


def test_missing_file_and_missing_column_are_named(tmp_path):
    with pytest.raises(InputError, match="not found"):
        FigureSpec(kind="trajectory", inputs=(FIXTURES / "nope.csv",))
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    with pytest.raises(InputError, match="bad.csv"):
        render(FigureSpec(kind="trajectory", inputs=(bad,)), tmp_path / "bad.png")


def test_unknown_kind_and_preset_rejected():
    with pytest.raises(InputError, match="unknown figure kind"):
        FigureSpec(kind="pie", inputs=(FIXTURES / "eq_k5_l5.csv",))
    with pytest.raises(InputError, match="unknown figure"):
        build_spec("no-such-figure", FIXTURES)


def test_cost_matrix_fixture_has_labelled_rows():
    table = load_table(FIXTURES / "cost_matrix_k25_l5.csv")
    assert table.labels == ("a1a", "a1b", "avg", "std")
    assert table.columns == ("b1a", "b1b")


def test_cli_render_and_list(tmp_path):
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "impact_games_plots.cli", "list"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "equilibrium-grid" in res.stdout
    out = tmp_path / "fig.png"
    res = subprocess.run(
        [
            sys.executable, "-m", "impact_games_plots.cli", "render", "equilibrium-trajectory",
            "--input-dir", str(FIXTURES), "--out", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert out.exists()
    res = subprocess.run(
        [sys.executable, "-m", "impact_games_plots.cli", "render", "bogus", "--input-dir", str(FIXTURES)],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 2
    assert "bogus" in res.stderr
