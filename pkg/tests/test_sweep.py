import json
import math

import numpy as np
import pytest

from spinpair.model import ModelParams
from spinpair.thermal import Temperature
from spinpair.entanglement import lambdas_closed, concurrence
from spinpair.criticality import concurrence_T0
from spinpair.sweep import (
    FIGURE_NAMES,
    AxisSpec,
    InvalidSpecError,
    SweepGrid,
    figure_preset,
    run_sweep,
    write_grid,
)


def test_axis_validation():
    with pytest.raises(InvalidSpecError):
        AxisSpec("b", 3.0, 0.0, 10)
    with pytest.raises(InvalidSpecError):
        AxisSpec("b", 0.0, 1.0, 1)
    with pytest.raises(InvalidSpecError):
        AxisSpec("q", 0.0, 1.0, 10)
    with pytest.raises(InvalidSpecError):
        AxisSpec("T", 0.0, 1.0, 10)
    with pytest.raises(InvalidSpecError):
        AxisSpec("b", 0.0, 1.0, 10, spacing="log")


def test_grid_validation():
    axis = AxisSpec("b", 0.0, 1.0, 5)
    with pytest.raises(InvalidSpecError):
        SweepGrid((axis, axis), ModelParams(), 1.0)
    with pytest.raises(InvalidSpecError):
        SweepGrid((), ModelParams(), 1.0)


def test_one_dimensional_zero_temperature_sweep():
    grid = run_sweep(
        SweepGrid((AxisSpec("b", 0.0, 3.0, 301),), ModelParams(J=1, gamma=0.2, Jz=-1, B=0), None)
    )
    values = grid.values
    bc = math.sqrt(0.44)
    points = grid.axes[0].points()
    assert values.shape == (301,)
    assert np.all(values[points < bc - 0.02] == 1.0)
    assert np.all(values[points > bc + 0.02] < 1.0)


def test_sweep_without_exchange_is_identically_zero():
    grid = run_sweep(
        SweepGrid((AxisSpec("b", 0.0, 2.0, 50),), ModelParams(J=0, gamma=0.5, B=1), 1.0)
    )
    assert np.all(grid.values == 0.0)


def test_two_dimensional_sweep_matches_pointwise_evaluation():
    axes = (AxisSpec("b", 0.0, 2.0, 10), AxisSpec("T", 0.5, 2.0, 10))
    base = ModelParams(J=1, gamma=0.3, Jz=0.4, B=1.0)
    grid = run_sweep(SweepGrid(axes, base, None))
    assert grid.values.shape == (10, 10)
    from dataclasses import replace

    for i, bv in enumerate(axes[0].points()):
        for j, tv in enumerate(axes[1].points()):
            direct = concurrence(lambdas_closed(replace(base, b=bv), Temperature(tv)))
            assert grid.values[i, j] == direct


def test_temperature_axis_sweep_and_zero_temperature_routing():
    thermal = run_sweep(
        SweepGrid((AxisSpec("T", 0.1, 2.0, 20),), ModelParams(J=1, gamma=0.2), 5.0)
    )
    assert thermal.values.shape == (20,)
    cold = run_sweep(SweepGrid((AxisSpec("b", 0.0, 1.0, 21),), ModelParams(J=1), None))
    assert cold.values[0] == concurrence_T0(ModelParams(J=1)).concurrence


def test_sweep_is_deterministic():
    spec = SweepGrid((AxisSpec("b", 0.0, 2.0, 40),), ModelParams(J=1, gamma=0.4, B=0.7), 0.5)
    a = run_sweep(spec).values
    b = run_sweep(spec).values
    assert np.array_equal(a, b)


def test_figure_presets_cover_expected_curves():
    assert set(FIGURE_NAMES) == {"fig1a", "fig1b", "fig1c", "fig2", "fig3", "fig4"}
    fig1a = figure_preset("fig1a")
    assert [label for label, _ in fig1a] == [
        "fig1a_gamma0.2",
        "fig1a_gamma0.6",
        "fig1a_gamma0.9",
    ]
    assert all(grid.params.B == 0.0 and grid.params.Jz == -1.0 for _, grid in fig1a)
    assert all(grid.temperature is None for _, grid in fig1a)

    fig1b = figure_preset("fig1b")
    assert len(fig1b) == 3 and all(grid.params.B == 0.8 for _, grid in fig1b)

    fig1c = figure_preset("fig1c")
    assert [label for label, _ in fig1c] == ["fig1c_Jz-0.2", "fig1c_Jz-0.6"]
    assert all(grid.params.gamma == 0.6 and grid.params.B == 0.8 for _, grid in fig1c)

    (label, fig2), = figure_preset("fig2")
    assert fig2.shape() == (161, 161)
    assert fig2.temperature == 0.2 and fig2.params.gamma == 0.3 and fig2.params.B == 4.0

    (_, fig3), = figure_preset("fig3")
    assert fig3.shape() == (161, 150)
    assert fig3.swept_names() == ("b", "T")
    assert fig3.params.Jz == 1.0 and fig3.params.B == 4.0

    (_, fig4), = figure_preset("fig4")
    assert fig4.shape() == (151, 101)
    assert fig4.temperature == 0.4 and fig4.params.Jz == -0.6 and fig4.params.B == 0.8


def test_figure_preset_rejects_unknown_name():
    with pytest.raises(InvalidSpecError) as info:
        figure_preset("fig9")
    assert "fig1a" in str(info.value) and "fig4" in str(info.value)


def test_fig1a_curves_start_at_maximal_concurrence():
    for _, spec in figure_preset("fig1a"):
        grid = run_sweep(spec)
        assert grid.values[0] == 1.0


def test_csv_two_by_two_grid_has_five_lines(tmp_path):
    axes = (AxisSpec("b", 0.0, 1.0, 2), AxisSpec("gamma", 0.0, 1.0, 2))
    grid = run_sweep(SweepGrid(axes, ModelParams(J=1), 1.0))
    out = tmp_path / "grid.csv"
    write_grid(grid, "csv", out)
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    assert lines[0] == "b,gamma,concurrence"
    assert all(len(line.split(",")) == 3 for line in lines[1:])


def test_csv_values_carry_twelve_significant_digits(tmp_path):
    grid = run_sweep(SweepGrid((AxisSpec("b", 0.0, 1.0, 3),), ModelParams(J=1, gamma=0.3), 0.7))
    out = tmp_path / "grid.csv"
    write_grid(grid, "csv", out)
    rows = out.read_text().splitlines()[1:]
    for row, value in zip(rows, grid.values):
        rendered = row.split(",")[1]
        assert rendered == format(float(value), ".12g")


def test_json_round_trip_is_bit_identical(tmp_path):
    axes = (AxisSpec("b", 0.0, 2.0, 7), AxisSpec("T", 0.3, 1.7, 5))
    grid = run_sweep(SweepGrid(axes, ModelParams(J=1.1, gamma=0.37, Jz=-0.21, B=0.9), None))
    out = tmp_path / "grid.json"
    write_grid(grid, "json", out)
    document = json.loads(out.read_text())
    assert document["schema_version"] == 1
    assert document["axes"][0]["parameter"] == "b"
    assert document["fixed"]["J"] == 1.1
    assert "b" not in document["fixed"] and "T" not in document["fixed"]
    parsed = np.array(document["values"])
    assert parsed.shape == grid.values.shape
    assert np.array_equal(parsed, grid.values)


def test_json_zero_temperature_flagged(tmp_path):
    grid = run_sweep(SweepGrid((AxisSpec("b", 0.0, 1.0, 3),), ModelParams(J=1), None))
    out = tmp_path / "grid.json"
    write_grid(grid, "json", out)
    document = json.loads(out.read_text())
    assert document["fixed"]["zero_temperature"] is True


def test_write_grid_rejects_unfilled_grid_and_unknown_format(tmp_path):
    spec = SweepGrid((AxisSpec("b", 0.0, 1.0, 3),), ModelParams(J=1), 1.0)
    with pytest.raises(InvalidSpecError):
        write_grid(spec, "csv", tmp_path / "x.csv")
    grid = run_sweep(spec)
    with pytest.raises(InvalidSpecError):
        write_grid(grid, "parquet", tmp_path / "x.parquet")


def test_write_grid_reports_unwritable_destination(tmp_path):
    grid = run_sweep(SweepGrid((AxisSpec("b", 0.0, 1.0, 3),), ModelParams(J=1), 1.0))
    missing = tmp_path / "no" / "such" / "dir" / "x.csv"
    with pytest.raises(OSError) as info:
        write_grid(grid, "csv", missing)
    assert "no" in str(info.value)


def test_repeated_writes_are_byte_identical(tmp_path):
    spec = SweepGrid((AxisSpec("b", 0.0, 4.0, 101),), ModelParams(J=1, gamma=0.2, Jz=-1), None)
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    write_grid(run_sweep(spec), "csv", first)
    write_grid(run_sweep(spec), "csv", second)
    assert first.read_bytes() == second.read_bytes()


def test_every_emitted_value_in_unit_interval():
    for name in FIGURE_NAMES:
        for _, spec in figure_preset(name):
            if spec.shape()[0] * (spec.shape()[1] if len(spec.shape()) > 1 else 1) > 20000:
                continue  # the large surfaces are covered by the acceptance suite
            values = run_sweep(spec).values
            assert np.all(values >= 0.0) and np.all(values <= 1.0)
