"""Jain fairness and the per-density / per-method comparison report."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .alloc import METHODS, AllocationResult, allocate
from .channel import PathLossModel, sinr_matrix
from .linkadapt import ThroughputSpaceMatrix, throughput_matrix
from .scenario import Scenario, build_bosphorus

FAIRNESS_HEADER = ["num_ships", "method", "jain", "phi_bps", "total_bps"]
USERS_HEADER = ["num_ships", "method", "user_id", "serving_enodeb", "rbs", "throughput_bps"]


class UndefinedFairnessError(ValueError):
    pass


class IncompleteSweepError(ValueError):
    pass


def jain_index(throughputs: Sequence[float]) -> float:
    """(sum T)^2 / (J * sum T^2) over all J users, zero-throughput users included."""
    t = np.asarray(throughputs, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("need a non-empty 1-D throughput vector")
    if np.any(t < 0):
        raise ValueError("throughputs must be non-negative")
    square_sum = float(np.dot(t, t))
    if square_sum == 0.0:
        raise UndefinedFairnessError("fairness is undefined when every throughput is zero")
    return float(t.sum()) ** 2 / (t.size * square_sum)


@dataclass(frozen=True)
class MethodSummary:
    num_ships: int
    result: AllocationResult
    jain: float
    phi: int
    total: int

    @property
    def method(self) -> str:
        return self.result.method


@dataclass(frozen=True)
class ComparisonReport:
    densities: tuple[int, ...]
    methods: tuple[str, ...]
    rows: tuple[MethodSummary, ...]  # ordered by (num_ships, method order)

    def get(self, num_ships: int, method: str) -> MethodSummary:
        for row in self.rows:
            if row.num_ships == num_ships and row.method == method:
                return row
        raise KeyError((num_ships, method))

    def fairness_rows(self) -> list[list]:
        return [
            [r.num_ships, r.method, f"{r.jain:.12g}", r.phi, r.total] for r in self.rows
        ]

    def user_rows(self) -> list[list]:
        out = []
        for r in self.rows:
            res = r.result
            for j, i in enumerate(res.association):
                out.append(
                    [r.num_ships, r.method, j + 1, i + 1, res.user_rbs[j], res.user_throughput[j]]
                )
        return out


def build_report(
    results: Mapping[int, Mapping[str, AllocationResult]], methods: Iterable[str] = METHODS
) -> ComparisonReport:
    """Assemble sweep results keyed ``{num_ships: {method: result}}``."""
    methods = tuple(methods)
    if not results:
        raise IncompleteSweepError("no densities in sweep")
    rows = []
    for m in sorted(results):
        per_method = results[m]
        for method in methods:
            if method not in per_method:
                raise IncompleteSweepError(f"density {m} has no result for {method!r}")
            res = per_method[method]
            if len(res.user_throughput) != m:
                raise IncompleteSweepError(
                    f"density {m}: {method} result covers {len(res.user_throughput)} users"
                )
            rows.append(
                MethodSummary(m, res, jain_index(res.user_throughput), res.phi, sum(res.user_throughput))
            )
    return ComparisonReport(tuple(sorted(results)), methods, tuple(rows))


def scenario_throughputs(scenario: Scenario, model: PathLossModel) -> ThroughputSpaceMatrix:
    return throughput_matrix(sinr_matrix(scenario, model), scenario)


def run_scenario(
    scenario: Scenario, model: PathLossModel, methods: Iterable[str] = METHODS
) -> dict[str, AllocationResult]:
    tmat = scenario_throughputs(scenario, model)
    demand = [scenario.demand_bps] * len(scenario.ships)
    return {m: allocate(m, tmat, scenario.num_rbs, demand) for m in methods}


def run_sweep(
    densities: Iterable[int],
    model: PathLossModel | None = None,
    overrides: Mapping | None = None,
    methods: Iterable[str] = METHODS,
) -> ComparisonReport:
    model = model or PathLossModel("3ray")
    methods = tuple(methods)
    results = {
        m: run_scenario(build_bosphorus(m, overrides), model, methods) for m in sorted(set(densities))
    }
    return build_report(results, methods)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_fairness_csv(report: ComparisonReport, path: str | Path) -> None:
    _write_csv(Path(path), FAIRNESS_HEADER, report.fairness_rows())


def write_users_csv(report: ComparisonReport, path: str | Path) -> None:
    _write_csv(Path(path), USERS_HEADER, report.user_rows())
