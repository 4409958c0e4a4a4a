"""Command-line front end.

    purposedyn <subcommand> --scenario FILE [--out DIR] [options]

Subcommands: steady-state, path, compare-ownership, comparative-statics,
sosd-sweep, fosd-shift, validate. Each run writes CSV artifacts plus a
run manifest into the output directory; tables echoed to stdout use six
significant digits while the CSV files keep full precision.

Exit codes: 0 success, 1 validation error, 2 infeasible request,
3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .analytics import (
    comparative_statics,
    profit_alternative_bracket,
    profit_closed_form,
    steady_state_outcomes,
    worker_owned_steady_state,
)
from .dynamics import dp_oracle, steady_state, transition_path
from .errors import InfeasiblePathError, PurposedynError, ValidationError
from .experiments import run_fosd_experiment, run_spread_experiment
from .scenarios import Scenario, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2
EXIT_INTERNAL = 3


def _thread_count() -> int:
    raw = os.environ.get("PURPOSEDYN_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"PURPOSEDYN_THREADS must be an integer, got {raw!r}")
    return max(n, 1)


def _ordered_map(fn, items):
    """Apply fn over items, optionally fanned out; results keep input order."""
    items = list(items)
    threads = _thread_count()
    if threads == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _write_csv(path: Path, rows: list[dict[str, object]]) -> None:
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def _print_table(rows: list[dict[str, object]]) -> None:
    if not rows:
        return
    headers = list(rows[0].keys())
    table = [[_fmt(r[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(row[i]) for row in table)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))


def _write_manifest(out: Path, scenario_path: Path, command: str, started: float) -> None:
    digest = hashlib.sha256(scenario_path.read_bytes()).hexdigest()
    manifest = {
        "command": command,
        "scenario": str(scenario_path),
        "scenario_sha256": digest,
        "tool_version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _cmd_validate(scenario: Scenario, args, out: Path | None) -> list[dict[str, object]]:
    mb = scenario.params.moments
    rows = [
        {
            "scenario": scenario.name,
            "m13": mb.m13,
            "m23": mb.m23,
            "m1": mb.m1,
            "m43": mb.m43,
            "m2": mb.m2,
            "a3_margin": mb.a3_margin,
        }
    ]
    if out is not None:
        _write_csv(out / "moments.csv", rows)
    return rows


def _cmd_steady_state(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    fp = scenario.params
    outcomes = steady_state_outcomes(fp)
    row: dict[str, object] = {"scenario": scenario.name, **outcomes}
    row["profit_closed_form"] = profit_closed_form(fp)
    row["profit_alternative_bracket"] = profit_alternative_bracket(fp)
    if args.grid:
        oracle = dp_oracle(fp, m_grid_size=args.grid, horizon=args.horizon or 60)
        row["dp_fixed_point"] = oracle.fixed_point
    rows = [row]
    _write_csv(out / "steady_state.csv", rows)
    return rows


def _cmd_path(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    horizon = args.horizon or scenario.horizon
    traj = transition_path(scenario.initial_meaning, horizon, scenario.params)
    rows = [
        {"t": p.t, "m_bar": p.m_bar, "r": p.r, "per_period_profit": p.per_period_profit}
        for p in traj.points
    ]
    _write_csv(out / "path.csv", rows)
    return rows


def _cmd_compare_ownership(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    fp = scenario.params
    inv = steady_state(fp)
    inv_outcomes = steady_state_outcomes(fp)
    wo = worker_owned_steady_state(fp)
    rows = [
        {
            "ownership": "investor_owned",
            "m_star": inv.m_star,
            "r_star": inv.r_star,
            "k_star": inv.k_star,
            "u_star_ref": inv_outcomes["u_star"],
            "firm_value": inv_outcomes["profit"],
        },
        {
            "ownership": "worker_owned",
            "m_star": wo.steady.m_star,
            "r_star": wo.steady.r_star,
            "k_star": wo.steady.k_star,
            "u_star_ref": wo.u_star_ref,
            "firm_value": wo.surplus,
        },
    ]
    _write_csv(out / "ownership.csv", rows)
    return rows


def _cmd_comparative_statics(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    fp = scenario.params
    reports = _ordered_map(
        lambda p: comparative_statics(fp, p, scenario.statics_step),
        scenario.statics_parameters,
    )
    rows = [row for report in reports for row in report.rows()]
    _write_csv(out / "comparative_statics.csv", rows)
    return rows


def _cmd_sosd_sweep(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    gammas = list(args.gamma) if args.gamma else list(scenario.gamma_list)
    if not gammas:
        raise ValidationError("sosd-sweep needs --gamma values or a gamma_list block")
    experiments = _ordered_map(
        lambda g: run_spread_experiment(scenario.params, g), gammas
    )
    rows = [row for exp in experiments for row in exp.rows()]
    _write_csv(out / "spread_experiments.csv", rows)
    return rows


def _cmd_fosd_shift(scenario: Scenario, args, out: Path) -> list[dict[str, object]]:
    shifts = list(args.shift) if args.shift else list(scenario.shift_list)
    if not shifts:
        raise ValidationError("fosd-shift needs --shift values or a shift_list block")
    experiments = _ordered_map(
        lambda s: run_fosd_experiment(scenario.params, s), shifts
    )
    rows = [row for exp in experiments for row in exp.rows()]
    _write_csv(out / "fosd_experiments.csv", rows)
    return rows


_COMMANDS = {
    "validate": _cmd_validate,
    "steady-state": _cmd_steady_state,
    "path": _cmd_path,
    "compare-ownership": _cmd_compare_ownership,
    "comparative-statics": _cmd_comparative_statics,
    "sosd-sweep": _cmd_sosd_sweep,
    "fosd-shift": _cmd_fosd_shift,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purposedyn",
        description="Steady states, transition paths and distribution experiments "
        "for the purpose-investment model.",
    )
    parser.add_argument("--version", action="version", version=f"purposedyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument(
            "--out",
            default=None,
            help="output directory for artifacts (required for all commands but validate)",
        )
        p.add_argument("--grid", type=int, default=0, help="DP oracle grid size (steady-state)")
        p.add_argument("--horizon", type=int, default=0, help="override scenario horizon")
        p.add_argument(
            "--gamma", type=float, action="append", help="spread size (sosd-sweep; repeatable)"
        )
        p.add_argument(
            "--shift", type=float, action="append", help="support shift (fosd-shift; repeatable)"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        scenario_path = Path(args.scenario)
        scenario = load_scenario(scenario_path)
        out: Path | None = Path(args.out) if args.out else None
        if out is None and args.command != "validate":
            raise ValidationError("--out is required for this command")
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
        rows = _COMMANDS[args.command](scenario, args, out)
        _print_table(rows)
        if out is not None:
            _write_manifest(out, scenario_path, args.command, started)
        return EXIT_OK
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasiblePathError as exc:
        print(f"infeasible request: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PurposedynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
