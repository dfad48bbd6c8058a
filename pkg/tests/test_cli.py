import csv
import json

import pytest

from sealte.cli import EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_OK, EXIT_ORACLE, main


def _rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_sweep_writes_fifteen_rows(tmp_path):
    out = tmp_path / "sweep"
    assert main(["--mode", "sweep", "--ships", "4,6,8,10,12", "--methods", "all", "--out", str(out)]) == 0
    rows = _rows(out / "fairness.csv")
    assert len(rows) == 15
    assert list(rows[0]) == ["num_ships", "method", "jain", "phi_bps", "total_bps"]
    assert [int(r["num_ships"]) for r in rows] == sorted(int(r["num_ships"]) for r in rows)
    users = _rows(out / "users.csv")
    assert list(users[0]) == ["num_ships", "method", "user_id", "serving_enodeb", "rbs", "throughput_bps"]
    assert len(users) == 3 * (4 + 6 + 8 + 10 + 12)


def test_pathloss_curve(tmp_path):
    out = tmp_path / "curve"
    args = ["--mode", "pathloss-curve", "--d-min", "100", "--d-max", "5000", "--points", "500", "--out", str(out)]
    assert main(args) == 0
    rows = _rows(out / "pathloss.csv")
    assert len(rows) == 500
    assert list(rows[0]) == ["d_m", "L_2ray_db", "L_2raymod_db", "L_3ray_db"]
    assert float(rows[0]["d_m"]) == 100 and float(rows[-1]["d_m"]) == 5000


def test_log_spaced_curve(tmp_path):
    out = tmp_path / "curve"
    assert main(["--mode", "pathloss-curve", "--spacing", "log", "--points", "3",
                 "--d-min", "10", "--d-max", "1000", "--out", str(out)]) == 0
    assert [float(r["d_m"]) for r in _rows(out / "pathloss.csv")] == pytest.approx([10, 100, 1000])


def test_single_with_oracle_check(tmp_path):
    cfg = tmp_path / "small.json"
    cfg.write_text(json.dumps({"num_enodebs": 2, "num_rbs": 10}))
    out = tmp_path / "single"
    code = main(["--mode", "single", "--ships", "3", "--methods", "maxmin",
                 "--oracle-check", "--config", str(cfg), "--out", str(out)])
    assert code == EXIT_OK
    payload = json.loads((out / "maxmin.json").read_text())
    assert payload["method"] == "maxmin"
    assert len(payload["association"]) == 3
    assert len(payload["rbs"]) == 2
    assert payload["phi_bps"] == min(payload["user_throughput_bps"])


def test_oracle_mismatch_exit_code(tmp_path, monkeypatch):
    from dataclasses import replace

    from sealte import alloc

    real = alloc.brute_force_oracle
    monkeypatch.setattr(
        alloc, "brute_force_oracle",
        lambda *a, **k: replace(real(*a, **k), user_throughput=(0,) * 3),
    )
    cfg = tmp_path / "small.json"
    cfg.write_text(json.dumps({"num_enodebs": 2, "num_rbs": 10}))
    code = main(["--ships", "3", "--oracle-check", "--config", str(cfg), "--out", str(tmp_path / "o")])
    assert code == EXIT_ORACLE


def test_env_config_fallback(tmp_path, monkeypatch):
    cfg = tmp_path / "env.json"
    cfg.write_text(json.dumps({"num_ships": 5}))
    monkeypatch.setenv("SEALTE_CONFIG", str(cfg))
    out = tmp_path / "o"
    assert main(["--methods", "roundrobin", "--out", str(out)]) == 0
    assert len(_rows(out / "users.csv")) == 5


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"num_ships": 5, "noise_mode": "thermal"}))
    out = tmp_path / "o"
    assert main(["--ships", "2", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(_rows(out / "users.csv")) == 6  # 2 ships x 3 methods


def test_config_error_exit(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"carrier_freq_hz": 0}')
    assert main(["--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_CONFIG
    cfg.write_text("{not json")
    assert main(["--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_CONFIG


def test_infeasible_exit(tmp_path):
    # paper-literal unit noise swamps every link, so no ship reaches MCS1
    assert main(["--noise-mode", "unit", "--out", str(tmp_path / "o")]) == EXIT_INFEASIBLE


def test_bad_curve_range(tmp_path):
    assert main(["--mode", "pathloss-curve", "--d-min", "0", "--out", str(tmp_path / "o")]) == EXIT_CONFIG


def test_sweep_is_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert main(["--mode", "sweep", "--out", str(out)]) == 0
        outs.append(out)
    for name in ("fairness.csv", "users.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_bad_flags_exit_two(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["--methods", "bogus"])
    assert err.value.code == 2
