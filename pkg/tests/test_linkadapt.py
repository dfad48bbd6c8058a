import dataclasses
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sealte.channel import SinrMatrix
from sealte.linkadapt import (
    MCS_TABLE,
    export_mcs_csv,
    rb_throughput,
    reachable_throughputs,
    select_mcs,
    throughput_matrix,
)
from sealte.scenario import build_bosphorus

GOLDEN = Path(__file__).parent / "data" / "mcs_table.csv"
SCENARIO = build_bosphorus(2)


def test_export_matches_golden(tmp_path):
    out = tmp_path / "mcs.csv"
    export_mcs_csv(out)
    assert out.read_text() == GOLDEN.read_text()


def test_table_strictly_increasing():
    for a, b in zip(MCS_TABLE, MCS_TABLE[1:]):
        assert a.index < b.index
        assert a.sinr_threshold < b.sinr_threshold
        assert a.efficiency < b.efficiency


@pytest.mark.parametrize(
    "sinr,index",
    [(17.6, 15), (12.9, 10), (30.0, 15), (-6.5, 1), (-6.49, 1), (0.0, 4)],
)
def test_select_mcs(sinr, index):
    assert select_mcs(sinr).index == index


def test_select_mcs_below_table():
    assert select_mcs(-7.0) is None


def test_select_mcs_efficiency_examples():
    assert select_mcs(17.6).efficiency == 5.55
    assert select_mcs(12.9).efficiency == 2.73


@pytest.mark.parametrize("row", MCS_TABLE, ids=lambda m: f"MCS{m.index}")
def test_threshold_round_trip(row):
    assert select_mcs(row.sinr_threshold) is row
    below = select_mcs(row.sinr_threshold - 1e-9)
    if row.index == 1:
        assert below is None
    else:
        assert below is MCS_TABLE[row.index - 2]


@given(st.floats(-50, 50), st.floats(0, 10))
def test_select_mcs_monotone(a, gap):
    lo, hi = select_mcs(a), select_mcs(a + gap)
    rank = lambda m: 0 if m is None else m.index  # noqa: E731
    assert rank(lo) <= rank(hi)


def test_rb_throughput_examples():
    # hand computation: efficiency * 12 * 7 * 2 * 1000 * 2
    assert rb_throughput(MCS_TABLE[14], SCENARIO) == 1_864_800
    assert rb_throughput(MCS_TABLE[0], SCENARIO) == 50_400
    assert rb_throughput(None, SCENARIO) == 0


def test_single_stream_halves():
    siso = dataclasses.replace(SCENARIO, mimo_streams=1)
    for m in MCS_TABLE:
        assert 2 * rb_throughput(m, siso) == rb_throughput(m, SCENARIO)


def test_fifteen_reachable_values():
    values = reachable_throughputs(SCENARIO)
    assert len(set(values)) == 15
    assert values == [round(m.efficiency * 336_000) for m in MCS_TABLE]


def _sinr(db):
    return SinrMatrix(10 ** (np.asarray(db, dtype=float) / 10))


def test_throughput_matrix_all_low():
    t = throughput_matrix(_sinr(np.full((4, 2), -10.0)), SCENARIO)
    assert np.array_equal(t.values, np.zeros((4, 2)))


def test_throughput_matrix_all_high():
    t = throughput_matrix(_sinr(np.full((4, 2), 20.0)), SCENARIO)
    assert np.all(t.values == 1_864_800)


def test_throughput_matrix_shape_check():
    with pytest.raises(ValueError):
        throughput_matrix(_sinr(np.zeros((3, 2))), SCENARIO)


@given(st.lists(st.floats(-20, 30), min_size=8, max_size=8), st.integers(0, 7), st.floats(0, 5))
def test_raising_one_entry_never_lowers_it(vals, k, bump):
    db = np.array(vals).reshape(4, 2)
    before = throughput_matrix(_sinr(db), SCENARIO).values
    db.flat[k] += bump
    after = throughput_matrix(_sinr(db), SCENARIO).values
    assert after.flat[k] >= before.flat[k]
    quantized = set(reachable_throughputs(SCENARIO)) | {0}
    assert set(after.flat) <= quantized
