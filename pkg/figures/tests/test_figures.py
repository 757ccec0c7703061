"""Figure regeneration from committed golden CSVs."""

import json
from pathlib import Path

import pytest

from bandfigures import FigureSpec, InputError, ParseError, read_sweep_csv, render
from bandfigures.cli import main

DATA = Path(__file__).parent / "data"

SWEEP = str(DATA / "mathieu_sweep.csv")
CARLEMAN = str(DATA / "carleman_bands.csv")
A02 = str(DATA / "mathieu_a02_bands.csv")
A06 = str(DATA / "mathieu_a06_bands.csv")


def render_bytes(kind, inputs, tmp_path, name):
    out = tmp_path / name
    render(FigureSpec(kind, inputs, str(out)))
    return out.read_bytes()


@pytest.mark.parametrize("kind,inputs", [
    ("bands-vs-A", [SWEEP]),
    ("band-functions-vs-k", [CARLEMAN]),
    ("top-branches-two-panel", [A02, A06]),
    ("crossing-local", [CARLEMAN]),
])
def test_kinds_render_deterministically(kind, inputs, tmp_path):
    a = render_bytes(kind, inputs, tmp_path, "a.svg")
    b = render_bytes(kind, inputs, tmp_path, "b.svg")
    assert a == b
    assert a.startswith(b"<svg ")
    assert b"</svg>" in a


def test_axis_labels_present(tmp_path):
    out = tmp_path / "f.svg"
    render(FigureSpec("bands-vs-A", [SWEEP], str(out)))
    body = out.read_text()
    assert ">A</text>" in body
    assert "log10 |E|" in body
    render(FigureSpec("band-functions-vs-k", [CARLEMAN], str(out)))
    body = out.read_text()
    assert ">k</text>" in body and ">E</text>" in body


def test_flat_bands_are_horizontal_segments(tmp_path):
    # a flat branch maps to a polyline with a single repeated y coordinate
    out = tmp_path / "flat.svg"
    render(FigureSpec("band-functions-vs-k", [A02], str(out)))
    assert "<polyline" in out.read_text()


def test_bands_vs_A_pinches_at_flat_point():
    # the two colliding intervals collapse at the sweep point nearest A*
    astar = json.loads((DATA / "astar.json").read_text())["A_star"]
    series = {s.branch_id: s for s in read_sweep_csv(SWEEP)}
    second_positive = series[1]
    first_negative = series[min(s.branch_id for s in series.values() if s.sign == "-")]
    for s in (second_positive, first_negative):
        i = min(range(len(s.A)), key=lambda j: abs(s.A[j] - astar))
        width = abs(s.hi[i] - s.lo[i])
        assert width < 1e-4, (s.branch_id, s.A[i], width)


def test_empty_csv_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("k,branch_id,sign,value\n")
    with pytest.raises(InputError, match="no branch"):
        render(FigureSpec("band-functions-vs-k", [str(empty)], str(tmp_path / "x.svg")))


def test_schema_violation_names_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("k,branch,sign,value\n0.0,0,+,1.0\n")
    with pytest.raises(ParseError, match="branch_id"):
        render(FigureSpec("band-functions-vs-k", [str(bad)], str(tmp_path / "x.svg")))
    bad.write_text("k,branch_id,sign,value\n0.0,0,*,1.0\n")
    with pytest.raises(ParseError, match="sign"):
        render(FigureSpec("band-functions-vs-k", [str(bad)], str(tmp_path / "x.svg")))


def test_unknown_kind_and_style_rejected(tmp_path):
    with pytest.raises(InputError, match="kind"):
        FigureSpec("pie-chart", [CARLEMAN], str(tmp_path / "x.svg"))
    with pytest.raises(InputError, match="style"):
        FigureSpec("crossing-local", [CARLEMAN], str(tmp_path / "x.svg"),
                   {"no_such_key": 1})


def test_two_panel_requires_two_inputs(tmp_path):
    with pytest.raises(InputError, match="two"):
        render(FigureSpec("top-branches-two-panel", [A02], str(tmp_path / "x.svg")))


def test_cli_round_trip(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    assert main(["bands-vs-A", "--in", SWEEP, "--out", str(out)]) == 0
    assert out.exists()
    # nonzero exit (with message) on an empty input
    empty = tmp_path / "empty.csv"
    empty.write_text("A,branch_id,sign,lo,hi,flat\n")
    assert main(["bands-vs-A", "--in", str(empty), "--out", str(out)]) == 1
    assert "no sweep rows" in capsys.readouterr().err


def test_cli_style_config(tmp_path):
    style = tmp_path / "style.json"
    style.write_text(json.dumps({"width": 400, "height": 300, "endpoint": "left"}))
    out = tmp_path / "fig.svg"
    assert main(["crossing-local", "--in", CARLEMAN, "--out", str(out),
                 "--style", str(style)]) == 0
    assert 'width="400"' in out.read_text()


def test_rendering_does_not_mutate_inputs(tmp_path):
    before = Path(SWEEP).read_bytes()
    render(FigureSpec("bands-vs-A", [SWEEP], str(tmp_path / "x.svg")))
    assert Path(SWEEP).read_bytes() == before
