"""MCS table lookup and per-RB throughput."""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .channel import SinrMatrix
from .scenario import Scenario

SLOTS_PER_MS = 2
MS_PER_S = 1000


@dataclass(frozen=True)
class McsEntry:
    index: int
    modulation: str
    code_rate: Fraction
    sinr_threshold: float  # dB
    efficiency: float  # bits/symbol

    @property
    def efficiency_centibits(self) -> int:
        return round(self.efficiency * 100)


def _row(index, modulation, rate, threshold, efficiency):
    return McsEntry(index, modulation, Fraction(rate), threshold, efficiency)


MCS_TABLE: tuple[McsEntry, ...] = (
    _row(1, "QPSK", "1/12", -6.5, 0.15),
    _row(2, "QPSK", "1/9", -4.0, 0.23),
    _row(3, "QPSK", "1/6", -2.6, 0.38),
    _row(4, "QPSK", "1/3", -1.0, 0.60),
    _row(5, "QPSK", "1/2", 1.0, 0.88),
    _row(6, "QPSK", "3/5", 3.0, 1.18),
    _row(7, "16QAM", "1/3", 6.6, 1.48),
    _row(8, "16QAM", "1/2", 10.0, 1.91),
    _row(9, "16QAM", "3/5", 11.4, 2.41),
    _row(10, "64QAM", "1/2", 11.8, 2.73),
    _row(11, "64QAM", "1/2", 13.0, 3.32),
    _row(12, "64QAM", "3/5", 13.8, 3.90),
    _row(13, "64QAM", "3/4", 15.6, 4.52),
    _row(14, "64QAM", "5/6", 16.8, 5.12),
    _row(15, "64QAM", "11/12", 17.6, 5.55),
)

_THRESHOLDS = [m.sinr_threshold for m in MCS_TABLE]


def select_mcs(sinr_db: float) -> McsEntry | None:
    """Highest MCS whose threshold is at or below ``sinr_db``; None below MCS1."""
    pos = bisect.bisect_right(_THRESHOLDS, sinr_db)
    return MCS_TABLE[pos - 1] if pos else None


def rb_throughput(mcs: McsEntry | None, scenario: Scenario) -> int:
    """Bits/s carried by one RB pair at ``mcs`` (0 for no MCS).

    Computed in integers: the symbol-rate factor is a multiple of 2000 so the
    two-decimal efficiencies always yield whole bits/s.
    """
    if mcs is None:
        return 0
    symbols_per_s = (
        scenario.subcarriers_per_rb
        * scenario.symbols_per_slot
        * SLOTS_PER_MS
        * MS_PER_S
        * scenario.mimo_streams
    )
    return mcs.efficiency_centibits * symbols_per_s // 100


@dataclass(frozen=True)
class ThroughputSpaceMatrix:
    values: np.ndarray  # (I, J) int64 bits/s per RB

    @property
    def shape(self):
        return self.values.shape


def throughput_matrix(sinr: SinrMatrix, scenario: Scenario) -> ThroughputSpaceMatrix:
    sinr_db = sinr.db
    expected = (len(scenario.enodebs), len(scenario.ships))
    if sinr_db.shape != expected:
        raise ValueError(f"SINR matrix shape {sinr_db.shape} != scenario shape {expected}")
    values = np.array(
        [[rb_throughput(select_mcs(v), scenario) for v in row] for row in sinr_db],
        dtype=np.int64,
    ).reshape(expected)
    return ThroughputSpaceMatrix(values)


def reachable_throughputs(scenario: Scenario) -> list[int]:
    return [rb_throughput(m, scenario) for m in MCS_TABLE]


MCS_CSV_HEADER = ["MCS", "Modulation", "Code Rate", "SINR Threshold [dB]", "Efficiency [bits/symbol]"]


def export_mcs_csv(path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MCS_CSV_HEADER)
        for m in MCS_TABLE:
            writer.writerow(
                [f"MCS{m.index}", m.modulation, str(m.code_rate), f"{m.sinr_threshold:g}", f"{m.efficiency:.2f}"]
            )
