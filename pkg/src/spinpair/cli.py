"""Command-line front end: eval, sweep, critical, figure, verify.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage or parameter error.  Every command accepts --json for a single
machine-readable JSON object on stdout; eval always emits JSON (indented
without --json, compact with it).  A --config file is a flat JSON object
keyed by long flag names; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .model import InvalidParameterError, ModelParams, energy_scales
from .thermal import Temperature, gibbs_closed
from .entanglement import concurrence, lambdas_closed
from .criticality import (
    UndefinedConditionError,
    concurrence_T0,
    critical_b,
    critical_temperature,
    critical_temperature_detail,
    detect_revival,
    larger_revival_condition,
)
from .sweep import (
    FIGURE_NAMES,
    AxisSpec,
    InvalidSpecError,
    SweepGrid,
    figure_preset,
    run_sweep,
    write_grid,
)
from .verify import run_verification

_DEFAULTS = {
    "J": 1.0,
    "gamma": 0.0,
    "Jz": 0.0,
    "B": 0.0,
    "b": 0.0,
    "T": 1.0,
    "zero-temperature": False,
    "format": "csv",
    "json": False,
    "samples": 1000,
    "seed": 42,
    "tol": 1e-10,
}

# Search ceiling for the critical temperature; well above every T_c the
# presets can produce.
_T_MAX = 10.0

_AXIS_GRAMMAR = "NAME:START:STOP:COUNT with NAME one of J, gamma, Jz, B, b, T"


class UsageError(Exception):
    """Bad flags or parameters; maps to exit code 2."""


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spinpair",
        description="Thermal entanglement of a two-qubit XYZ spin pair in a nonuniform field.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, model: bool = True) -> None:
        p.add_argument("--config", type=str, default=None, help="flat JSON file of flag defaults")
        p.add_argument("--json", action="store_true", default=None, help="compact JSON output")
        if model:
            for flag in ("J", "gamma", "Jz", "B", "b"):
                p.add_argument(f"--{flag}", type=float, default=None)
            p.add_argument("--T", type=float, default=None, help="temperature (> 0)")
            p.add_argument(
                "--zero-temperature",
                dest="zero_temperature",
                action="store_true",
                default=None,
                help="evaluate the T = 0 state instead of a thermal one",
            )

    p_eval = sub.add_parser("eval", help="one-point report: scales, state, roots, concurrence")
    add_common(p_eval)

    p_sweep = sub.add_parser("sweep", help="grid of concurrence values over one or two axes")
    add_common(p_sweep)
    p_sweep.add_argument(
        "--axis",
        action="append",
        default=None,
        metavar="NAME:START:STOP:COUNT",
        help=f"swept axis ({_AXIS_GRAMMAR}); repeatable up to twice",
    )
    p_sweep.add_argument("--out", type=str, default=None, required=False)
    p_sweep.add_argument("--format", choices=("csv", "json"), default=None)

    p_crit = sub.add_parser("critical", help="critical field or critical temperature")
    p_crit.add_argument("target", choices=("bfield", "temperature"))
    add_common(p_crit)

    p_fig = sub.add_parser("figure", help="write a named figure's data as CSV files")
    p_fig.add_argument("name", type=str)
    p_fig.add_argument("--out", type=str, default=None, required=False)
    p_fig.add_argument("--config", type=str, default=None)
    p_fig.add_argument("--json", action="store_true", default=None)

    p_verify = sub.add_parser("verify", help="run the randomized cross-check suites")
    add_common(p_verify, model=False)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--tol", type=float, default=None)

    return top


@dataclass
class CliConfig:
    """Flag values merged over config-file values over built-in defaults."""

    values: dict

    def get(self, key: str):
        return self.values[key]


def _merge_config(args: argparse.Namespace) -> CliConfig:
    file_values: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            raw = json.loads(Path(config_path).read_text())
        except OSError as exc:
            raise UsageError(f"--config: cannot read {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"--config: {config_path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError(f"--config: {config_path} must hold a flat JSON object")
        file_values = raw

    merged: dict = {}
    for key, default in _DEFAULTS.items():
        attr = key.replace("-", "_")
        flag_value = getattr(args, attr, None)
        if flag_value is not None:
            merged[key] = flag_value
        elif key in file_values:
            merged[key] = file_values[key]
        else:
            merged[key] = default
    for key in ("axis", "out"):
        flag_value = getattr(args, key, None)
        merged[key] = flag_value if flag_value is not None else file_values.get(key)
    return CliConfig(merged)


def _model_params(cfg: CliConfig) -> ModelParams:
    try:
        return ModelParams(
            J=float(cfg.get("J")),
            gamma=float(cfg.get("gamma")),
            Jz=float(cfg.get("Jz")),
            B=float(cfg.get("B")),
            b=float(cfg.get("b")),
        )
    except (InvalidParameterError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid model parameter: {exc}") from exc


def _temperature(cfg: CliConfig) -> Temperature | None:
    if cfg.get("zero-temperature"):
        return None
    t_value = cfg.get("T")
    try:
        return Temperature(float(t_value))
    except (InvalidParameterError, TypeError, ValueError) as exc:
        raise UsageError(
            f"invalid --T {t_value!r}: temperature must be finite and > 0 "
            "(pass --zero-temperature for the T = 0 state)"
        ) from exc


def _parse_axis(text: str) -> AxisSpec:
    parts = str(text).split(":")
    if len(parts) != 4:
        raise UsageError(f"malformed --axis {text!r}: expected {_AXIS_GRAMMAR}")
    name, start, stop, count = parts
    try:
        return AxisSpec(name, float(start), float(stop), int(count))
    except (InvalidSpecError, ValueError) as exc:
        raise UsageError(f"malformed --axis {text!r}: {exc}") from exc


def _emit(record: dict, compact: bool) -> None:
    if compact:
        print(json.dumps(record, separators=(",", ":")))
    else:
        print(json.dumps(record, indent=2))


def _params_record(p: ModelParams) -> dict:
    return {"J": p.J, "gamma": p.gamma, "Jz": p.Jz, "B": p.B, "b": p.b}


def _cmd_eval(cfg: CliConfig) -> int:
    p = _model_params(cfg)
    t = _temperature(cfg)
    scales = energy_scales(p)
    record: dict = {"params": _params_record(p), "eta": scales.eta, "xi": scales.xi}
    if t is None:
        verdict = concurrence_T0(p)
        record["zero_temperature"] = True
        record["branch"] = verdict.branch
        record["concurrence"] = verdict.concurrence
    else:
        state = gibbs_closed(p, t)
        spectrum = lambdas_closed(p, t)
        record["T"] = t.T
        record["partition"] = state.partition
        record["state"] = {
            "mu_plus": state.mu_plus,
            "mu_minus": state.mu_minus,
            "omega1": state.omega1,
            "omega2": state.omega2,
            "z": state.z,
            "v": state.v,
        }
        record["lambdas"] = list(spectrum.lambdas)
        record["concurrence"] = concurrence(spectrum)
    _emit(record, bool(cfg.get("json")))
    return 0


def _cmd_sweep(cfg: CliConfig) -> int:
    axes_text = cfg.get("axis")
    if not axes_text:
        raise UsageError(f"sweep needs at least one --axis ({_AXIS_GRAMMAR})")
    if isinstance(axes_text, str):
        axes_text = [axes_text]
    if len(axes_text) > 2:
        raise UsageError("sweep takes at most two --axis flags")
    axes = tuple(_parse_axis(text) for text in axes_text)

    out = cfg.get("out")
    if not out:
        raise UsageError("sweep needs --out PATH")
    p = _model_params(cfg)
    zero_t = bool(cfg.get("zero-temperature"))
    swept = {ax.parameter for ax in axes}
    if zero_t and "T" in swept:
        raise UsageError("--zero-temperature cannot be combined with a T axis")
    temperature = None if zero_t else float(cfg.get("T"))
    if "T" in swept:
        temperature = None  # per-point values come from the axis

    try:
        grid = run_sweep(SweepGrid(axes, p, temperature))
        write_grid(grid, cfg.get("format"), out)
    except InvalidSpecError as exc:
        raise UsageError(str(exc)) from exc

    record = {"out": str(out), "format": cfg.get("format"), "shape": list(grid.shape())}
    if cfg.get("json"):
        _emit(record, True)
    else:
        shape = "x".join(str(c) for c in grid.shape())
        print(f"wrote {out} ({shape} points, {cfg.get('format')})")
    return 0


def _cmd_critical(cfg: CliConfig, target: str) -> int:
    p = _model_params(cfg)
    compact = bool(cfg.get("json"))
    if target == "bfield":
        bc = critical_b(p)
        larger: bool | None = None
        if bc is not None:
            try:
                larger = larger_revival_condition(p)
            except UndefinedConditionError as exc:
                raise UsageError(str(exc)) from exc
        record = {"params": _params_record(p), "b_c": bc, "larger_revival": larger}
        if compact:
            _emit(record, True)
        elif bc is None:
            print("b_c = none (no zero-temperature transition in b)")
        else:
            print(f"b_c = {bc:.9g}")
            print(f"larger revival beyond b_c: {'yes' if larger else 'no'}")
        return 0

    detail = critical_temperature_detail(p, _T_MAX)
    record = {"params": _params_record(p), "t_max": _T_MAX}
    if detail is None:
        record["T_c"] = None
        record["bracket"] = None
    else:
        tc, lo, hi = detail
        record["T_c"] = tc
        record["bracket"] = [lo, hi]
    if compact:
        _emit(record, True)
    elif detail is None:
        print(f"T_c = none (no entanglement found below T = {_T_MAX:g})")
    else:
        print(f"T_c = {record['T_c']:.9g}")
        print(f"bracketing interval: [{record['bracket'][0]:.9g}, {record['bracket'][1]:.9g}]")
    return 0


def _figure_summary(name: str, label: str, grid: SweepGrid) -> dict | None:
    if name.startswith("fig1"):
        p = grid.params
        bc = critical_b(p)
        report = detect_revival(p, None, b_max=grid.axes[0].stop, n=grid.axes[0].count)
        return {
            "curve": label,
            "b_c": bc,
            "plateau": report.plateau_value,
            "revival_peak": report.revival_peak_value,
            "larger_revival": report.larger_revival,
        }
    if name == "fig3":
        p = grid.params
        probes = [4.0, 5.0, 6.0, 7.0]
        tcs = [critical_temperature(ModelParams(p.J, p.gamma, p.Jz, p.B, bv), 6.0) for bv in probes]
        return {
            "surface": label,
            "T_c_at_b": {f"{bv:g}": tc for bv, tc in zip(probes, tcs)},
            "T_c_nondecreasing": all(
                x is not None and y is not None and y >= x for x, y in zip(tcs, tcs[1:])
            ),
        }
    return None


def _cmd_figure(cfg: CliConfig, name: str) -> int:
    out = cfg.get("out")
    if not out:
        raise UsageError("figure needs --out DIR")
    try:
        curves = figure_preset(name)
    except InvalidSpecError as exc:
        raise UsageError(str(exc)) from exc
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    summaries = []
    for label, spec in curves:
        grid = run_sweep(spec)
        destination = out_dir / f"{label}.csv"
        write_grid(grid, "csv", destination)
        written.append(str(destination))
        summary = _figure_summary(name, label, grid)
        if summary is not None:
            summaries.append(summary)

    record = {"figure": name, "files": written, "summaries": summaries}
    if cfg.get("json"):
        _emit(record, True)
    else:
        for path in written:
            print(f"wrote {path}")
        for summary in summaries:
            print(json.dumps(summary))
    return 0


def _cmd_verify(cfg: CliConfig) -> int:
    samples = int(cfg.get("samples"))
    if samples < 1:
        raise UsageError(f"--samples must be >= 1, got {samples}")
    seed = int(cfg.get("seed"))
    tol = float(cfg.get("tol"))
    if not tol > 0.0:
        raise UsageError(f"--tol must be > 0, got {tol}")

    results = run_verification(samples, seed, tol)
    ok = all(r.passed for r in results)
    if cfg.get("json"):
        record = {
            "passed": ok,
            "samples": samples,
            "seed": seed,
            "tol": tol,
            "suites": [
                {
                    "name": r.name,
                    "samples": r.samples,
                    "max_deviation": r.max_deviation,
                    "threshold": r.threshold,
                    "passed": r.passed,
                    "worst_draw": r.worst_draw,
                }
                for r in results
            ],
        }
        _emit(record, True)
    else:
        for r in results:
            print(r.line())
            if not r.passed and r.worst_draw is not None:
                print(f"      worst draw: {r.worst_draw}")
        print("verification OK" if ok else "verification FAILED")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    try:
        cfg = _merge_config(args)
        if args.command == "eval":
            return _cmd_eval(cfg)
        if args.command == "sweep":
            return _cmd_sweep(cfg)
        if args.command == "critical":
            return _cmd_critical(cfg, args.target)
        if args.command == "figure":
            return _cmd_figure(cfg, args.name)
        if args.command == "verify":
            return _cmd_verify(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameterError, InvalidSpecError, UndefinedConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
