"""Command-line front end.

Exit codes: 0 = success / checked relation true; 1 = input or validation
error; 2 = checked relation false or a search found a counterexample, so
shell scripts can branch on the math.

Vectors are passed inline as comma-separated floats or through a JSON
instance file with keys x, y, levels_s, levels_c, beta, cycle (inline flags
override the file; unknown keys are rejected). Numeric output uses fixed
6 decimal places; --json switches any subcommand to a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

import numpy as np

from .conditions import (
    adjacent_ratio_bound_ok,
    boundary_ratios_ok,
    endpoint_conditions_ok,
    ratio_bound_holds,
    support_size_uniform,
)
from .errors import FlexcatError
from .majorize import (
    flexible_cycle_ok,
    is_majorized_by,
    vidal_probability,
    violation_indices,
)
from .probvec import Cycle, SchmidtVec, make_prob_vec, sort_desc
from .search import (
    DEFAULT_ENT_GRID,
    DEFAULT_THERMO_GRID,
    GridSpec,
    LandscapeGrid,
    best_flexible,
    best_standard,
    conjecture_search,
    per_step_probability,
    scan_pflex_landscape,
    scan_thermo_feasibility,
    scan_thermo_standard,
)
from .thermo import gibbs_vector, thermo_flexible_ok, thermo_majorizes

INSTANCE_KEYS = {"x", "y", "levels_s", "levels_c", "beta", "cycle"}

# Embedded demonstration instances so `reproduce` runs without input files.
DEMO_X4 = (0.5789, 0.2691, 0.0872, 0.0648)
DEMO_Y4 = (0.4937, 0.2468, 0.2043, 0.0552)
ALT_X4 = (0.5064, 0.2565, 0.1401, 0.0970)
ALT_Y4 = (0.5474, 0.2048, 0.1903, 0.0575)
ALT_C1 = (0.6333, 0.2667, 0.1000)
ALT_C2 = (0.6167, 0.2833, 0.1000)
THERMO_P = (0.09, 0.53, 0.38)
THERMO_Q = (0.11, 0.75, 0.14)
THERMO_LEVELS_S = (0.0, 1.0, 2.0)
THERMO_LEVELS_C = (0.0, 1.0)
THERMO_BETA = 1.0
THERMO_C1 = (0.82, 0.18)
THERMO_C2 = (0.59, 0.41)


class CliError(Exception):
    """Input error carrying the message for stderr."""


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise CliError(f"cannot parse {what}: {text!r}") from exc


def _parse_cycle(text: str) -> list[list[float]]:
    states = [s for s in text.split(";") if s.strip() != ""]
    if not states:
        raise CliError("cycle is empty")
    return [_parse_floats(s, "cycle state") for s in states]


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"range must look like lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise CliError(f"cannot parse range {text!r}") from exc
    return lo, hi


def _load_instance(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"{path} must hold a JSON object")
    unknown = set(data) - INSTANCE_KEYS
    if unknown:
        raise CliError(f"unknown instance keys: {sorted(unknown)}")
    return data


class _Inputs:
    """Merged view of the instance file and inline flags (inline wins)."""

    def __init__(self, args: argparse.Namespace):
        self.file = _load_instance(args.file) if getattr(args, "file", None) else {}
        self.args = args

    def vector(self, name: str, required: bool = True) -> list[float] | None:
        inline = getattr(self.args, name, None)
        if inline is not None:
            return _parse_floats(inline, name)
        if name in self.file:
            raw = self.file[name]
            if not isinstance(raw, list):
                raise CliError(f"instance key {name} must be a list")
            return [float(v) for v in raw]
        if required:
            raise CliError(f"missing vector {name}: pass --{name} or an instance file")
        return None

    def levels(self, name: str, required: bool = True) -> list[float] | None:
        flag = name.replace("_", "-")
        inline = getattr(self.args, name, None)
        if inline is not None:
            return _parse_floats(inline, flag)
        if name in self.file:
            return [float(v) for v in self.file[name]]
        if required:
            raise CliError(f"missing {flag}: pass --{flag} or an instance file")
        return None

    def beta(self, required: bool = True) -> float | None:
        inline = getattr(self.args, "beta", None)
        if inline is not None:
            return float(inline)
        if "beta" in self.file:
            return float(self.file["beta"])
        if required:
            raise CliError("missing beta: pass --beta or an instance file")
        return None

    def cycle(self, required: bool = True) -> list[list[float]] | None:
        inline = getattr(self.args, "cycle", None)
        if inline is not None:
            return _parse_cycle(inline)
        if "cycle" in self.file:
            raw = self.file["cycle"]
            if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
                raise CliError("instance key cycle must be a list of lists")
            return [[float(v) for v in s] for s in raw]
        if required:
            raise CliError("missing cycle: pass --cycle or an instance file")
        return None


def _emit(args: argparse.Namespace, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _grid_spec(args: argparse.Namespace, default: GridSpec) -> GridSpec:
    steps = getattr(args, "grid", None) or default.steps1
    if getattr(args, "range", None):
        lo, hi = _parse_range(args.range)
    else:
        lo, hi = default.lo1, default.hi1
    return GridSpec(lo, hi, lo, hi, steps, steps)


def _write_landscape_csv(grid: LandscapeGrid, out) -> None:
    a1 = grid.spec.axis1()
    a2 = grid.spec.axis2()
    out.write("c1,c2,value\n")
    for i in range(grid.spec.steps1):
        for j in range(grid.spec.steps2):
            out.write(f"{a1[i]:.6f},{a2[j]:.6f},{grid.values[i, j]:.6f}\n")


def _write_landscape_pgm(grid: LandscapeGrid, path: str) -> None:
    vals = grid.values
    lo = float(vals.min())
    hi = float(vals.max())
    scale = (vals - lo) / (hi - lo) if hi > lo else np.zeros_like(vals)
    # rows follow c2 from lowest to highest; columns follow c1
    pixels = np.round(255.0 * scale.T).astype(np.uint8)
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(pixels.tobytes())


def _export_landscape(args: argparse.Namespace, grid: LandscapeGrid) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_landscape_csv(grid, fh)
    else:
        _write_landscape_csv(grid, sys.stdout)
    if getattr(args, "pgm", None):
        _write_landscape_pgm(grid, args.pgm)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_check_major(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    ok = is_majorized_by(x, y)
    _emit(args, {"majorized": ok}, [_fmt_bool(ok)])
    return 0 if ok else 2


def _cmd_vidal(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    p = vidal_probability(x, y)
    _emit(args, {"probability": p}, [_fmt(p)])
    return 0


def _cmd_check_flex(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    cycle = Cycle(tuple(sort_desc(make_prob_vec(s)) for s in inp.cycle()))
    ok = flexible_cycle_ok(x, y, cycle)
    _emit(args, {"feasible": ok}, [_fmt_bool(ok)])
    return 0 if ok else 2


def _cmd_check_thermo(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    p = make_prob_vec(inp.vector("x"))
    q = make_prob_vec(inp.vector("y"))
    beta = inp.beta()
    levels_s = inp.levels("levels_s")
    gamma_s = gibbs_vector(levels_s, beta)
    cycle_states = inp.cycle(required=False)
    if cycle_states is None:
        ok = thermo_majorizes(p, q, gamma_s)
        _emit(args, {"thermo_majorizes": ok}, [_fmt_bool(ok)])
        return 0 if ok else 2
    levels_c = inp.levels("levels_c")
    gamma_c = gibbs_vector(levels_c, beta)
    cycle = Cycle(tuple(make_prob_vec(s) for s in cycle_states))
    ok = thermo_flexible_ok(p, q, gamma_s, cycle, gamma_c)
    _emit(args, {"feasible": ok}, [_fmt_bool(ok)])
    return 0 if ok else 2


def _cmd_gibbs(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    levels = inp.levels("levels_s")
    beta = inp.beta()
    g = gibbs_vector(levels, beta)
    _emit(args, {"gibbs": list(g.values)}, [",".join(_fmt(v) for v in g.values)])
    return 0


def _cmd_scan_fig1(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    spec = _grid_spec(args, DEFAULT_ENT_GRID)
    grid = scan_pflex_landscape(x, y, spec)
    if args.json:
        print(json.dumps({"steps": spec.steps1, "max": float(grid.values.max())}, sort_keys=True))
    else:
        _export_landscape(args, grid)
    return 0


def _cmd_scan_fig2(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    p = make_prob_vec(inp.vector("x"))
    q = make_prob_vec(inp.vector("y"))
    spec = _grid_spec(args, DEFAULT_THERMO_GRID)
    grid = scan_thermo_feasibility(
        p, q, inp.levels("levels_s"), inp.levels("levels_c"), inp.beta(), spec
    )
    if args.json:
        feasible = int(round(float(grid.values.sum())))
        print(json.dumps({"steps": spec.steps1, "feasible_cells": feasible}, sort_keys=True))
    else:
        _export_landscape(args, grid)
    return 0


def _cmd_best_catalyst(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    if args.standard:
        result = best_standard(x, y, args.resolution)
        payload = {"c": result.params[0], "value": result.value, "iterations": result.iterations}
        lines = [f"c {_fmt(result.params[0])}", f"value {_fmt(result.value)}"]
    else:
        spec = _grid_spec(args, DEFAULT_ENT_GRID)
        result = best_flexible(x, y, spec)
        payload = {
            "c1": result.params[0],
            "c2": result.params[1],
            "value": result.value,
            "iterations": result.iterations,
        }
        lines = [
            f"c1 {_fmt(result.params[0])}",
            f"c2 {_fmt(result.params[1])}",
            f"value {_fmt(result.value)}",
        ]
    _emit(args, payload, lines)
    return 0


def _cmd_conditions(args: argparse.Namespace) -> int:
    inp = _Inputs(args)
    x = sort_desc(make_prob_vec(inp.vector("x")))
    y = sort_desc(make_prob_vec(inp.vector("y")))
    report = violation_indices(x, y)
    checks: dict[str, bool] = {"endpoint_conditions": endpoint_conditions_ok(x, y)}
    cycle_states = inp.cycle(required=False)
    if cycle_states is not None:
        cycle = Cycle(tuple(sort_desc(make_prob_vec(s)) for s in cycle_states))
        checks["boundary_ratios"] = boundary_ratios_ok(x, y, cycle)
        checks["support_size_uniform"] = support_size_uniform(cycle)
        if not report.empty:
            checks["ratio_bound"] = ratio_bound_holds(cycle, y, report)
    indices = sorted(report.indices)
    lines = [f"violation_indices {indices if indices else 'none'}"]
    lines += [f"{name} {_fmt_bool(ok)}" for name, ok in checks.items()]
    payload = {"violation_indices": indices, **checks}
    _emit(args, payload, lines)
    return 0 if all(checks.values()) else 2


def _cmd_conjecture(args: argparse.Namespace) -> int:
    report = conjecture_search(args.trials, args.seed, args.d, args.resolution)
    if args.json:
        print(report.to_json())
    else:
        print(f"trials {report.trials}")
        print(f"flexible_feasible {report.flexible_feasible_trials}")
        print(
            "standard_found "
            f"{report.standard_on_grid_trials + report.standard_by_refinement_trials}"
        )
        print(f"candidates {len(report.candidates)}")
        for cand in report.candidates:
            print(
                f"candidate trial={cand.trial} x={cand.x} y={cand.y} "
                f"cycle={cand.cycle_weights} best_standard={cand.best_standard_weight} "
                f"margin={cand.best_standard_margin}"
            )
    return 2 if report.candidates else 0


def _reproduce_rows(section: str) -> list[tuple[str, float, float, float]]:
    """(name, expected, computed, tolerance) rows for the requested section."""
    rows: list[tuple[str, float, float, float]] = []
    x4 = sort_desc(make_prob_vec(DEMO_X4))
    y4 = sort_desc(make_prob_vec(DEMO_Y4))
    if section in ("entanglement", "all"):
        rows.append(("base_probability", 0.5857, vidal_probability(x4, y4), 1e-4))
        std = best_standard(x4, y4)
        rows.append(("best_standard_weight", 0.2651, std.params[0], 5e-3))
        rows.append(("best_standard_value", 0.7299, std.value, 2e-3))
        flex = best_flexible(x4, y4)
        rows.append(("best_flexible_weight_1", 0.3936, flex.params[0], 5e-3))
        rows.append(("best_flexible_weight_2", 0.2149, flex.params[1], 5e-3))
        rows.append(("best_flexible_value", 0.7666, flex.value, 2e-3))
        reference = Cycle((SchmidtVec((1 - 0.3936, 0.3936)), SchmidtVec((1 - 0.2149, 0.2149))))
        rows.append(("per_step_at_reference_cycle", 0.7666, per_step_probability(x4, y4, reference), 2e-3))
    if section in ("thermo", "all"):
        gamma = gibbs_vector(THERMO_LEVELS_S, THERMO_BETA)
        rows.append(("gibbs_ground_weight", 0.6652, gamma.values[0], 1e-4))
        rows.append(("gibbs_mid_weight", 0.2447, gamma.values[1], 1e-4))
        rows.append(("gibbs_top_weight", 0.0900, gamma.values[2], 1e-4))
        p = make_prob_vec(THERMO_P)
        q = make_prob_vec(THERMO_Q)
        rows.append(("thermo_direct_fails", 0.0, float(thermo_majorizes(p, q, gamma)), 0.5))
        gamma_c = gibbs_vector(THERMO_LEVELS_C, THERMO_BETA)
        cycle = Cycle((make_prob_vec(THERMO_C1), make_prob_vec(THERMO_C2)))
        ok = thermo_flexible_ok(p, q, gamma, cycle, gamma_c)
        rows.append(("thermo_cycle_feasible", 1.0, float(ok), 0.5))
        diag = scan_thermo_standard(p, q, THERMO_LEVELS_S, THERMO_LEVELS_C, THERMO_BETA, 1001)
        rows.append(("thermo_standard_feasible_count", 0.0, float(diag.sum()), 0.5))
        degen = scan_thermo_feasibility(
            p, q, THERMO_LEVELS_S, (0.0, 0.0), THERMO_BETA, DEFAULT_THERMO_GRID
        )
        rows.append(("thermo_degenerate_feasible_cells", 0.0, float(degen.values.sum()), 0.5))
    if section in ("supplement", "all"):
        xa = sort_desc(make_prob_vec(ALT_X4))
        ya = sort_desc(make_prob_vec(ALT_Y4))
        report = violation_indices(xa, ya)
        rows.append(("violation_index", 2.0, float(min(report.indices)), 0.5))
        rows.append(("violation_count", 1.0, float(len(report.indices)), 0.5))
        ya_vals = ya.values
        rows.append(
            ("adjacent_threshold", 2.673, min(ya_vals[0] / ya_vals[1], ya_vals[2] / ya_vals[3]), 1e-3)
        )
        c2 = sort_desc(make_prob_vec(ALT_C2))
        rows.append(("second_state_adjacent_ratio", 2.833, c2.values[1] / c2.values[2], 1e-3))
        cycle = Cycle((sort_desc(make_prob_vec(ALT_C1)), c2))
        rows.append(("cycle_feasible", 1.0, float(flexible_cycle_ok(xa, ya, cycle)), 0.5))
        rows.append(
            ("second_state_breaks_adjacent_bound", 0.0, float(adjacent_ratio_bound_ok(c2, ya, report)), 0.5)
        )
    return rows


def _cmd_reproduce(args: argparse.Namespace) -> int:
    rows = _reproduce_rows(args.section)
    results = []
    all_ok = True
    for name, expected, computed, tol in rows:
        ok = abs(computed - expected) <= tol
        all_ok = all_ok and ok
        results.append(
            {"name": name, "expected": expected, "computed": computed, "tol": tol, "pass": ok}
        )
    if args.json:
        print(json.dumps({"results": results, "all_pass": all_ok}, sort_keys=True))
    else:
        width = max(len(r["name"]) for r in results)
        for r in results:
            status = "PASS" if r["pass"] else "FAIL"
            print(
                f"{r['name']:<{width}}  expected {_fmt(r['expected'])}  "
                f"computed {_fmt(r['computed'])}  tol {r['tol']:g}  {status}"
            )
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_io_flags(sub: argparse.ArgumentParser, *names: str) -> None:
    if "x" in names:
        sub.add_argument("--x", help="comma-separated entries of the first vector")
    if "y" in names:
        sub.add_argument("--y", help="comma-separated entries of the second vector")
    if "cycle" in names:
        sub.add_argument("--cycle", help="semicolon-separated catalyst states, e.g. 0.8,0.2;0.6,0.4")
    if "levels" in names:
        sub.add_argument("--levels-s", dest="levels_s", help="system energy levels")
        sub.add_argument("--levels-c", dest="levels_c", help="catalyst energy levels")
        sub.add_argument("--beta", type=float, help="inverse temperature")
    sub.add_argument("--file", help="JSON instance file")
    sub.add_argument("--json", action="store_true", help="emit a single JSON object")


def _add_grid_flags(sub: argparse.ArgumentParser, default_steps: int) -> None:
    sub.add_argument("--grid", type=int, help=f"grid points per axis (default {default_steps})")
    sub.add_argument("--range", help="axis range lo:hi")
    sub.add_argument("--out", help="write CSV to this path instead of stdout")
    sub.add_argument("--pgm", help="also write an 8-bit grayscale PGM image")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexcat",
        description="Majorization, thermo-majorization, and flexible-catalyst searches.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("check-major", help="is x majorized by y?")
    _add_io_flags(sub, "x", "y")
    sub.set_defaults(func=_cmd_check_major)

    sub = subs.add_parser("vidal", help="stochastic conversion probability x -> y")
    _add_io_flags(sub, "x", "y")
    sub.set_defaults(func=_cmd_vidal)

    sub = subs.add_parser("check-flex", help="does a catalyst cycle convert x -> y?")
    _add_io_flags(sub, "x", "y", "cycle")
    sub.set_defaults(func=_cmd_check_flex)

    sub = subs.add_parser("check-thermo", help="thermo-majorization, optionally with a cycle")
    _add_io_flags(sub, "x", "y", "cycle", "levels")
    sub.set_defaults(func=_cmd_check_thermo)

    sub = subs.add_parser("gibbs", help="thermal distribution of energy levels")
    _add_io_flags(sub, "levels")
    sub.set_defaults(func=_cmd_gibbs)

    sub = subs.add_parser("scan-fig1", help="per-step probability landscape (CSV)")
    _add_io_flags(sub, "x", "y")
    _add_grid_flags(sub, DEFAULT_ENT_GRID.steps1)
    sub.set_defaults(func=_cmd_scan_fig1)

    sub = subs.add_parser("scan-fig2", help="thermal 2-cycle feasibility landscape (CSV)")
    _add_io_flags(sub, "x", "y", "levels")
    _add_grid_flags(sub, DEFAULT_THERMO_GRID.steps1)
    sub.set_defaults(func=_cmd_scan_fig2)

    sub = subs.add_parser("best-catalyst", help="optimize the catalyst weight(s)")
    _add_io_flags(sub, "x", "y")
    mode = sub.add_mutually_exclusive_group(required=True)
    mode.add_argument("--standard", action="store_true", help="constant catalyst")
    mode.add_argument("--flexible", action="store_true", help="2-cycle of catalysts")
    sub.add_argument("--resolution", type=float, default=0.0025, help="diagonal scan pitch")
    sub.add_argument("--grid", type=int, help="grid points per axis for --flexible")
    sub.add_argument("--range", help="axis range lo:hi for --flexible")
    sub.set_defaults(func=_cmd_best_catalyst)

    sub = subs.add_parser("conditions", help="necessary-condition predicates for x -> y")
    _add_io_flags(sub, "x", "y", "cycle")
    sub.set_defaults(func=_cmd_conditions)

    sub = subs.add_parser("conjecture", help="random-instance search for flexible-only cases")
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--d", type=int, default=4, help="system dimension")
    sub.add_argument("--resolution", type=float, default=0.005, help="catalyst grid pitch")
    sub.add_argument("--json", action="store_true", help="emit the full report as JSON")
    sub.set_defaults(func=_cmd_conjecture)

    sub = subs.add_parser("reproduce", help="recompute embedded reference results")
    sub.add_argument(
        "--section",
        choices=["entanglement", "thermo", "supplement", "all"],
        default="all",
    )
    sub.add_argument("--all", dest="section", action="store_const", const="all")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=_cmd_reproduce)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (CliError, FlexcatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
