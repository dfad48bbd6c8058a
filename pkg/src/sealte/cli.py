"""Command-line front end.

Precedence: command-line flags > config file (--config or $SEALTE_CONFIG) >
built-in defaults.

Exit codes: 0 ok, 1 infeasible scenario, 2 configuration error,
3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import alloc
from .alloc import METHODS, InfeasibleDemandError, InfeasibleUserError
from .channel import MODELS, DomainError, PathLossModel, pathloss_curves
from .metrics import (
    USERS_HEADER,
    build_report,
    run_scenario,
    scenario_throughputs,
    write_fairness_csv,
    write_users_csv,
)
from .scenario import NOISE_MODES, ConfigError, build_bosphorus, read_config, resolve_config

logger = logging.getLogger("sealte")

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_CONFIG = 2
EXIT_ORACLE = 3

CURVE_HEADER = ["d_m", "L_2ray_db", "L_2raymod_db", "L_3ray_db"]


class OracleMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class RunSpec:
    mode: str
    ships: tuple[int, ...]
    methods: tuple[str, ...]
    model: PathLossModel
    output_dir: Path
    config_path: Path | None = None
    oracle_check: bool = False
    noise_mode: str | None = None
    d_min: float = 100.0
    d_max: float = 5000.0
    points: int = 500
    spacing: str = "linear"


def _parse_ships(text: str) -> tuple[int, ...]:
    try:
        values = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ships expects comma-separated integers, got {text!r}")
    if not values or values[0] < 1:
        raise argparse.ArgumentTypeError("--ships needs at least one positive count")
    return tuple(values)


def _parse_methods(text: str) -> tuple[str, ...]:
    if text == "all":
        return METHODS
    chosen = [m.strip() for m in text.split(",") if m.strip()]
    unknown = [m for m in chosen if m not in METHODS]
    if unknown or not chosen:
        raise argparse.ArgumentTypeError(f"--methods: choose from {METHODS} or 'all', got {text!r}")
    # canonical order keeps outputs stable regardless of flag order
    return tuple(m for m in METHODS if m in chosen)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sealte",
        description="LTE downlink RB allocation over maritime channels.",
        epilog="Flags override config-file values, which override built-in defaults. "
        "Without --config the path in $SEALTE_CONFIG is used if set.",
    )
    p.add_argument("--mode", choices=["single", "sweep", "pathloss-curve"], default="single")
    p.add_argument("--ships", type=_parse_ships, default=None,
                   help="ship count (single) or comma list (sweep); default from config")
    p.add_argument("--methods", type=_parse_methods, default=METHODS,
                   help="comma list of maxmin,roundrobin,opportunistic or 'all'")
    p.add_argument("--model", choices=MODELS, default="3ray")
    p.add_argument("--system-loss", type=float, default=1.0, help="2-Ray system loss factor")
    p.add_argument("--noise-mode", choices=NOISE_MODES, default=None)
    p.add_argument("--config", type=Path, default=None)
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--oracle-check", action="store_true",
                   help="cross-check max-min against brute force on small instances")
    p.add_argument("--d-min", type=float, default=100.0)
    p.add_argument("--d-max", type=float, default=5000.0)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    config = args.config
    if config is None and os.environ.get("SEALTE_CONFIG"):
        config = Path(os.environ["SEALTE_CONFIG"])
    if args.mode == "single" and args.ships is not None and len(args.ships) != 1:
        raise ConfigError("ships", "single mode takes one ship count")
    return RunSpec(
        mode=args.mode,
        ships=args.ships or (),
        methods=args.methods,
        model=PathLossModel(args.model, args.system_loss),
        output_dir=args.out,
        config_path=config,
        oracle_check=args.oracle_check,
        noise_mode=args.noise_mode,
        d_min=args.d_min,
        d_max=args.d_max,
        points=args.points,
        spacing=args.spacing,
    )


def _overrides(spec: RunSpec) -> dict:
    cfg = read_config(spec.config_path) if spec.config_path else {}
    cfg = resolve_config(cfg)
    if spec.noise_mode is not None:
        cfg["noise_mode"] = spec.noise_mode
        # an explicit mode flag supersedes a configured absolute noise power
        cfg["noise_power"] = None
    return cfg


def _oracle_check(scenario, tmat, maxmin_result) -> None:
    n_enb, n_users = tmat.shape
    if (
        n_enb > alloc.ORACLE_MAX_ENODEBS
        or n_users > alloc.ORACLE_MAX_USERS
        or scenario.num_rbs > alloc.ORACLE_MAX_RBS
    ):
        logger.warning(
            "oracle check skipped: %dx%d with N=%d is outside the brute-force limits",
            n_enb, n_users, scenario.num_rbs,
        )
        return
    demand = [scenario.demand_bps] * n_users
    oracle = alloc.brute_force_oracle(tmat, scenario.num_rbs, demand)
    if oracle.phi != maxmin_result.phi:
        raise OracleMismatch(
            f"{n_users} ships: max-min phi {maxmin_result.phi} != brute force phi {oracle.phi}"
        )
    logger.info("oracle check passed for %d ships: phi=%d", n_users, oracle.phi)


def _evaluate(spec: RunSpec, cfg: dict, num_ships: int):
    scenario = build_bosphorus(num_ships, cfg)
    results = run_scenario(scenario, spec.model, spec.methods)
    if spec.oracle_check:
        res = results.get("maxmin")
        if res is None:
            tmat = scenario_throughputs(scenario, spec.model)
            res = alloc.maxmin_allocate(tmat, scenario.num_rbs, [scenario.demand_bps] * num_ships)
        _oracle_check(scenario, scenario_throughputs(scenario, spec.model).values, res)
    return results


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def run_single(spec: RunSpec, cfg: dict) -> list[Path]:
    num_ships = spec.ships[0] if spec.ships else cfg["num_ships"]
    results = _evaluate(spec, cfg, num_ships)
    written = []
    rows = []
    for method, res in results.items():
        path = spec.output_dir / f"{method}.json"
        _write_json(path, res.to_json())
        written.append(path)
        for j, i in enumerate(res.association):
            rows.append([num_ships, method, j + 1, i + 1, res.user_rbs[j], res.user_throughput[j]])
    users = spec.output_dir / "users.csv"
    with open(users, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(USERS_HEADER)
        writer.writerows(rows)
    written.append(users)
    return written


def run_sweep_mode(spec: RunSpec, cfg: dict) -> list[Path]:
    densities = spec.ships or (4, 6, 8, 10, 12)
    results = {m: _evaluate(spec, cfg, m) for m in densities}
    report = build_report(results, spec.methods)
    fairness = spec.output_dir / "fairness.csv"
    users = spec.output_dir / "users.csv"
    write_fairness_csv(report, fairness)
    write_users_csv(report, users)
    return [fairness, users]


def run_curve(spec: RunSpec, cfg: dict) -> list[Path]:
    if spec.points < 2:
        raise ConfigError("points", "need at least 2 grid points")
    if not 0 < spec.d_min < spec.d_max:
        raise ConfigError("d-min/d-max", "need 0 < d-min < d-max")
    if spec.spacing == "log":
        d = np.geomspace(spec.d_min, spec.d_max, spec.points)
    else:
        d = np.linspace(spec.d_min, spec.d_max, spec.points)
    scenario = build_bosphorus(1, cfg)
    curves = pathloss_curves(d, scenario, spec.model.system_loss)
    path = spec.output_dir / "pathloss.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CURVE_HEADER)
        for k in range(len(d)):
            writer.writerow([f"{d[k]:.10g}"] + [f"{curves[c][k]:.10g}" for c in CURVE_HEADER[1:]])
    return [path]


def run(spec: RunSpec) -> int:
    """Execute ``spec``; returns the process exit code."""
    try:
        cfg = _overrides(spec)
        spec.output_dir.mkdir(parents=True, exist_ok=True)
        if spec.mode == "pathloss-curve":
            written = run_curve(spec, cfg)
        elif spec.mode == "sweep":
            written = run_sweep_mode(spec, cfg)
        else:
            written = run_single(spec, cfg)
    except (ConfigError, DomainError) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except (InfeasibleUserError, InfeasibleDemandError) as exc:
        logger.error("infeasible scenario: %s", exc)
        return EXIT_INFEASIBLE
    except OracleMismatch as exc:
        logger.error("oracle mismatch: %s", exc)
        return EXIT_ORACLE
    for path in written:
        logger.info("wrote %s", path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        spec = spec_from_args(args)
    except ConfigError as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
