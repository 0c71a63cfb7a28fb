"""Concurrence grids over one or two swept parameters, with CSV/JSON output.

A sweep fixes the model parameters and temperature, varies one or two of
{J, gamma, Jz, B, b, T} on linear axes, and evaluates the concurrence at
every grid point (zero-temperature sweeps go through the exact piecewise
form, finite-temperature ones through the closed-form roots).  Evaluation
is pointwise and deterministic, so identical specs always serialize to
identical bytes.  Named presets reproduce the standard curve and surface
families for this model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .model import ModelParams
from .thermal import Temperature
from .entanglement import lambdas_closed, concurrence
from .criticality import concurrence_T0

SWEEPABLE = ("J", "gamma", "Jz", "B", "b", "T")
FIGURE_NAMES = ("fig1a", "fig1b", "fig1c", "fig2", "fig3", "fig4")


class InvalidSpecError(ValueError):
    """A sweep specification is malformed."""


@dataclass(frozen=True)
class AxisSpec:
    """One swept parameter: ``count`` linear points from start to stop."""

    parameter: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.parameter not in SWEEPABLE:
            raise InvalidSpecError(
                f"unknown sweep parameter {self.parameter!r}; expected one of {SWEEPABLE}"
            )
        if not self.start < self.stop:
            raise InvalidSpecError(
                f"axis {self.parameter}: start must be < stop, got {self.start} >= {self.stop}"
            )
        if self.count < 2:
            raise InvalidSpecError(f"axis {self.parameter}: count must be >= 2, got {self.count}")
        if self.spacing != "linear":
            raise InvalidSpecError(f"axis {self.parameter}: only linear spacing is supported")
        if self.parameter == "T" and self.start <= 0.0:
            raise InvalidSpecError("axis T: start must be > 0")

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepGrid:
    """Axes plus fixed parameters, and the concurrence values once run.

    ``temperature`` None means a zero-temperature sweep (only valid when T
    is not itself an axis).  ``values`` is row-major with the first axis
    outermost; it is None until ``run_sweep`` fills it.
    """

    axes: tuple[AxisSpec, ...]
    params: ModelParams
    temperature: float | None
    values: np.ndarray | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise InvalidSpecError(f"sweeps take one or two axes, got {len(self.axes)}")
        names = [ax.parameter for ax in self.axes]
        if len(set(names)) != len(names):
            raise InvalidSpecError(f"duplicate sweep parameter in axes: {names}")
        if self.temperature is not None:
            Temperature(self.temperature)  # validates finite and > 0

    def swept_names(self) -> tuple[str, ...]:
        return tuple(ax.parameter for ax in self.axes)

    def shape(self) -> tuple[int, ...]:
        return tuple(ax.count for ax in self.axes)


def _point_value(base: ModelParams, temperature: float | None, names, coords) -> float:
    updates = {}
    t_value = temperature
    for name, value in zip(names, coords):
        if name == "T":
            t_value = float(value)
        else:
            updates[name] = float(value)
    p = replace(base, **updates) if updates else base
    if t_value is None:
        return concurrence_T0(p).concurrence
    return concurrence(lambdas_closed(p, Temperature(t_value)))


def run_sweep(grid: SweepGrid) -> SweepGrid:
    """Fill the grid with concurrence values, first axis outermost."""
    names = grid.swept_names()
    if len(grid.axes) == 1:
        pts = grid.axes[0].points()
        values = np.array(
            [_point_value(grid.params, grid.temperature, names, (x,)) for x in pts]
        )
    else:
        pts1 = grid.axes[0].points()
        pts2 = grid.axes[1].points()
        values = np.empty((len(pts1), len(pts2)))
        for i, x in enumerate(pts1):
            for j, y in enumerate(pts2):
                values[i, j] = _point_value(grid.params, grid.temperature, names, (x, y))
    return replace(grid, values=values)


def figure_preset(name: str) -> list[tuple[str, SweepGrid]]:
    """Named sweep specs for the standard figure families.

    fig1a/fig1b return three zero-temperature C(b) curves (gamma in
    {0.2, 0.6, 0.9}), fig1c two (Jz in {-0.2, -0.6}); fig2, fig3 and fig4
    return one surface each.  Axis ranges cover every transition and
    revival the presets are meant to show while staying quick to evaluate.
    """
    b_axis = AxisSpec("b", 0.0, 4.0, 401)
    if name == "fig1a":
        return [
            (
                f"fig1a_gamma{g:g}",
                SweepGrid((b_axis,), ModelParams(J=1.0, gamma=g, Jz=-1.0, B=0.0), None),
            )
            for g in (0.2, 0.6, 0.9)
        ]
    if name == "fig1b":
        return [
            (
                f"fig1b_gamma{g:g}",
                SweepGrid((b_axis,), ModelParams(J=1.0, gamma=g, Jz=-1.0, B=0.8), None),
            )
            for g in (0.2, 0.6, 0.9)
        ]
    if name == "fig1c":
        return [
            (
                f"fig1c_Jz{jz:g}",
                SweepGrid((b_axis,), ModelParams(J=1.0, gamma=0.6, Jz=jz, B=0.8), None),
            )
            for jz in (-0.2, -0.6)
        ]
    if name == "fig2":
        axes = (AxisSpec("b", 0.0, 8.0, 161), AxisSpec("Jz", -2.0, 2.0, 161))
        return [("fig2", SweepGrid(axes, ModelParams(J=1.0, gamma=0.3, B=4.0), 0.2))]
    if name == "fig3":
        axes = (AxisSpec("b", 0.0, 8.0, 161), AxisSpec("T", 0.02, 3.0, 150))
        return [("fig3", SweepGrid(axes, ModelParams(J=1.0, gamma=0.2, Jz=1.0, B=4.0), None))]
    if name == "fig4":
        # b stops at 1.5: beyond ~1.75 the two entangled lobes merge around
        # the tip of the separating zero valley and the two-region structure
        # this preset exists to show would disappear.
        axes = (AxisSpec("b", 0.0, 1.5, 151), AxisSpec("gamma", 0.0, 1.0, 101))
        return [("fig4", SweepGrid(axes, ModelParams(J=1.0, Jz=-0.6, B=0.8), 0.4))]
    raise InvalidSpecError(f"unknown figure {name!r}; valid names: {', '.join(FIGURE_NAMES)}")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _fixed_mapping(grid: SweepGrid) -> dict:
    swept = set(grid.swept_names())
    fixed = {
        name: getattr(grid.params, name)
        for name in ("J", "gamma", "Jz", "B", "b")
        if name not in swept
    }
    if "T" not in swept:
        if grid.temperature is None:
            fixed["zero_temperature"] = True
        else:
            fixed["T"] = grid.temperature
    return fixed


def _render_csv(grid: SweepGrid) -> str:
    names = grid.swept_names()
    lines = [",".join(list(names) + ["concurrence"])]
    if len(grid.axes) == 1:
        for x, c in zip(grid.axes[0].points(), grid.values):
            lines.append(f"{_fmt(x)},{_fmt(c)}")
    else:
        pts2 = grid.axes[1].points()
        for i, x in enumerate(grid.axes[0].points()):
            for j, y in enumerate(pts2):
                lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(grid.values[i, j])}")
    return "\n".join(lines) + "\n"


def write_grid(grid: SweepGrid, format: str, destination) -> None:
    """Serialize a filled grid to ``destination`` as CSV or JSON.

    CSV carries one row per grid point (axis columns then concurrence,
    first axis outermost, 12 significant digits).  JSON carries the axes,
    the fixed parameters, the nested value arrays at full precision, and a
    schema_version field.
    """
    if grid.values is None:
        raise InvalidSpecError("grid has no values yet; call run_sweep first")
    path = Path(destination)
    if format == "csv":
        path.write_text(_render_csv(grid), encoding="ascii", newline="\n")
    elif format == "json":
        document = {
            "schema_version": 1,
            "axes": [
                {
                    "parameter": ax.parameter,
                    "start": ax.start,
                    "stop": ax.stop,
                    "count": ax.count,
                    "spacing": ax.spacing,
                }
                for ax in grid.axes
            ],
            "fixed": _fixed_mapping(grid),
            "values": grid.values.tolist(),
        }
        path.write_text(json.dumps(document, indent=1) + "\n", encoding="ascii", newline="\n")
    else:
        raise InvalidSpecError(f"unknown format {format!r}; expected 'csv' or 'json'")
