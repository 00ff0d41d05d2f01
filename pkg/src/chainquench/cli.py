"""Command-line front end: run experiments, sweep parameters, fit, count costs.

Outputs are a trajectory CSV per run plus a JSON manifest that echoes the
full resolved configuration, enough to regenerate the CSV bit for bit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .detect import DEFAULT_ABS_TOL, DEFAULT_SIG, FitWindow, fit_log, last_decade
from .evolve import default_time_grid
from .experiment import (
    ExperimentConfig,
    TrajectoryRecord,
    run_experiment,
    run_sweep,
)
from .hamiltonian import ChainParams
from .quantifiers import measurement_cost

CSV_HEADER = ["t", "C_mean", "C_sem", "P_mean", "P_sem", "E_mean", "E_sem"]
MANIFEST_FORMAT_VERSION = 1

_CONFIG_KEYS = {
    "n_sites",
    "J",
    "W",
    "g",
    "boundary",
    "initial_state",
    "mode",
    "window",
    "time_grid",
    "realizations",
    "master_seed",
    "W_values",
    "g_values",
}


class ConfigError(Exception):
    pass


def _require(raw: dict, key: str):
    if key not in raw:
        raise ConfigError(f"config key {key!r} is required")
    return raw[key]


def load_config_file(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must contain a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return raw


def parse_config(raw: dict, seed_override: int | None = None) -> ExperimentConfig:
    grid_raw = raw.get("time_grid", {})
    if not isinstance(grid_raw, dict):
        raise ConfigError("time_grid must be an object with t_min/t_max/n_points")
    try:
        grid = default_time_grid(
            t_min=float(grid_raw.get("t_min", 0.1)),
            t_max=float(grid_raw.get("t_max", 1000.0)),
            n_points=int(grid_raw.get("n_points", 61)),
        )
        chain = ChainParams(
            n_sites=int(_require(raw, "n_sites")),
            J=float(raw.get("J", 1.0)),
            W=float(raw.get("W", 0.0)),
            g=float(raw.get("g", 0.0)),
            boundary=str(raw.get("boundary", "open")),
        )
        window = raw.get("window")
        config = ExperimentConfig(
            chain=chain,
            initial_state=str(_require(raw, "initial_state")),
            grid=grid,
            realizations=int(_require(raw, "realizations")),
            master_seed=int(seed_override if seed_override is not None else _require(raw, "master_seed")),
            mode=str(raw.get("mode", "global")),
            window=None if window is None else int(window),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return config


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "n_sites": config.chain.n_sites,
        "J": config.chain.J,
        "W": config.chain.W,
        "g": config.chain.g,
        "boundary": config.chain.boundary,
        "initial_state": config.initial_state,
        "mode": config.mode,
        "window": config.window,
        "time_grid": {
            "t_min": float(config.grid.times[0]),
            "t_max": float(config.grid.times[-1]),
            "n_points": len(config.grid),
        },
        "realizations": config.realizations,
        "master_seed": config.master_seed,
    }


def write_trajectory_csv(path: Path, record: TrajectoryRecord) -> None:
    columns = [
        record.times,
        record.c_mean,
        record.c_sem,
        record.p_mean,
        record.p_sem,
        record.e_mean,
        record.e_sem,
    ]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in zip(*columns):
            # repr of a Python float round-trips exactly
            writer.writerow([repr(float(x)) for x in row])


def write_manifest(path: Path, record: TrajectoryRecord, csv_name: str) -> None:
    manifest = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "tool": "chainquench",
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "csv": csv_name,
        "master_seed": record.config.master_seed,
        "config": config_to_dict(record.config),
        "realization_seeds": list(record.seeds),
        "warnings": list(record.warnings),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _emit(record: TrajectoryRecord, out_dir: Path, stem: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    write_trajectory_csv(csv_path, record)
    write_manifest(out_dir / f"{stem}.manifest.json", record, csv_path.name)
    print(csv_path)


def cmd_run(args: argparse.Namespace) -> int:
    config = parse_config(load_config_file(args.config), seed_override=args.seed)
    record = run_experiment(config, n_workers=args.threads)
    _emit(record, Path(args.out_dir), "trajectory")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    raw = load_config_file(args.config)
    w_values = raw.get("W_values")
    g_values = raw.get("g_values")
    if not w_values or not g_values:
        raise ConfigError("sweep needs nonempty W_values and g_values lists")
    base = parse_config(raw, seed_override=args.seed)
    records = run_sweep(base, [float(w) for w in w_values], [float(g) for g in g_values],
                        n_workers=args.threads)
    out_dir = Path(args.out_dir)
    for record in records:
        chain = record.config.chain
        _emit(record, out_dir, f"traj_W{chain.W:g}_g{chain.g:g}")
    return 0


def _read_trajectory_csv(path: str | Path) -> TrajectoryRecord:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            missing = [c for c in CSV_HEADER if c not in fields]
            if missing:
                raise ConfigError(f"{path} is missing columns {missing}")
            rows = [[float(row[c]) for c in CSV_HEADER] for row in reader]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"{path} has a non-numeric cell: {exc}") from exc
    if not rows:
        raise ConfigError(f"{path} contains no data rows")
    data = np.asarray(rows)
    return TrajectoryRecord(
        times=data[:, 0],
        c_mean=data[:, 1],
        c_sem=data[:, 2],
        p_mean=data[:, 3],
        p_sem=data[:, 4],
        e_mean=data[:, 5],
        e_sem=data[:, 6],
        config=None,
        seeds=(),
        warnings=(),
    )


def cmd_fit(args: argparse.Namespace) -> int:
    record = _read_trajectory_csv(args.csv)
    if args.window_low is None and args.window_high is None:
        window = last_decade(record.times)
    else:
        low = args.window_low if args.window_low is not None else float(record.times[0])
        high = args.window_high if args.window_high is not None else float(record.times[-1])
        try:
            window = FitWindow(t_low=low, t_high=high)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    try:
        result = fit_log(record, args.quantity, window, abs_tol=args.abs_tol, sig=args.sig)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    payload = {"quantity": args.quantity, "window": asdict(window), **asdict(result)}
    print(json.dumps(payload, indent=2))
    return 0


def cmd_cost(args: argparse.Namespace) -> int:
    try:
        print(measurement_cost(args.n_sites, args.quantifier))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainquench",
        description="Quench dynamics of disordered fermion chains with "
        "coherence/predictability/entanglement trajectories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_exec_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out-dir", default=".", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker thread cap")
        p.add_argument("--seed", type=int, default=None, help="override master seed")

    p_run = sub.add_parser("run", help="single disorder-averaged experiment")
    add_exec_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="Cartesian (W, g) sweep with paired disorder")
    add_exec_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_fit = sub.add_parser("fit", help="fit a - b*log(t) to a trajectory CSV")
    p_fit.add_argument("csv", help="trajectory CSV produced by run/sweep")
    p_fit.add_argument("--quantity", choices=["C", "P", "E"], default="P")
    p_fit.add_argument("--window-low", type=float, default=None)
    p_fit.add_argument("--window-high", type=float, default=None)
    p_fit.add_argument("--abs-tol", type=float, default=DEFAULT_ABS_TOL)
    p_fit.add_argument("--sig", type=float, default=DEFAULT_SIG)
    p_fit.set_defaults(func=cmd_fit)

    p_cost = sub.add_parser("cost", help="observable count for a quantifier")
    p_cost.add_argument("n_sites", type=int)
    p_cost.add_argument("quantifier", help="P, C, or E (or full names)")
    p_cost.set_defaults(func=cmd_cost)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # errors surfacing after config validation are numeric in nature
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
