import csv
import json
import os

import numpy as np
import pytest

from qudit_lab.cli import CSV_COLUMNS, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_well_defaults(tmp_path, capsys):
    path = tmp_path / "well.json"
    code, out, err = run(["solve-well", "--out", str(path)], capsys)
    assert code == 0 and out == "" and err == ""
    data = json.loads(path.read_text())
    assert [s["n"] for s in data["states"]] == list(range(1, 8))
    assert set(data["states"][0]) == {"n", "E", "parity", "k", "kappa"}
    assert np.array(data["dipole"]).shape == (7, 7)


def test_solve_well_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["solve-well", "--out", str(a)], capsys)
    run(["solve-well", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_solve_well_shallow_exits_2(tmp_path, capsys):
    path = tmp_path / "well.json"
    code, out, err = run(["solve-well", "--depth", "1e-6", "--out", str(path)], capsys)
    assert code == 2
    assert "bound" in err
    assert not path.exists()


@pytest.mark.parametrize("argv", [["solve-well", "--depth", "-3"], ["frobnicate"], ["solve-well", "--format", "csv"]])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def read_sweep(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture(scope="module")
def default_sweep(tmp_path_factory):
    path = tmp_path_factory.mktemp("sweep") / "sweep.csv"
    assert main(["thermal-sweep", "--out", str(path)]) == 0
    return path


def test_thermal_sweep_shape(default_sweep):
    rows = read_sweep(default_sweep)
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 201
    assert b"\r" not in default_sweep.read_bytes()


def test_thermal_sweep_nonnegative(default_sweep):
    values = np.array(read_sweep(default_sweep)[1:], dtype=float)
    assert values[:, 1:].min() >= -1e-9


def test_thermal_sweep_deterministic(default_sweep, tmp_path, capsys):
    again = tmp_path / "again.csv"
    run(["thermal-sweep", "--out", str(again)], capsys)
    assert again.read_bytes() == default_sweep.read_bytes()


def test_thermal_sweep_json(capsys):
    code, out, _ = run(["thermal-sweep", "--points", "3", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 3 and set(rows[0]) == set(CSV_COLUMNS)


def test_thermal_sweep_bad_grid(capsys):
    code, _, err = run(["thermal-sweep", "--tmin", "10", "--tmax", "1"], capsys)
    assert code == 2 and err


def test_thermal_sweep_ac_maximum_near_18(tmp_path, capsys):
    path = tmp_path / "fine.csv"
    run(["thermal-sweep", "--tmin", "1", "--tmax", "50", "--points", "197", "--out", str(path)], capsys)
    values = np.array(read_sweep(path)[1:], dtype=float)
    T, ac = values[:, 0], values[:, 2]
    assert 18.0 in T
    i = int(np.argmax(ac))
    assert 0 < i < len(T) - 1
    assert abs(T[i] - 18.0) <= 3.0


def test_parity_gate(capsys):
    code, out, _ = run(["parity", "--string", "000000"], capsys)
    assert code == 0
    assert "outcome: 0" in out
    assert "oracle_queries: 3" in out
    assert "global_phase: +1" in out


def test_parity_pulse_matches_gate(capsys):
    _, gate, _ = run(["parity", "--string", "010101"], capsys)
    code, pulse, _ = run(["parity", "--string", "010101", "--level", "pulse"], capsys)
    assert code == 0 and "outcome: 1" in pulse
    amp = lambda text: np.array(
        [complex(l.split(":")[1].replace(" ", "")) for l in text.splitlines() if l.startswith("  |")]
    )
    assert np.abs(amp(gate) - amp(pulse)).max() < 1e-9


@pytest.mark.parametrize("s", ["01010", "0101010", "01x101"])
def test_parity_malformed_string(s, capsys):
    code, out, err = run(["parity", "--string", s], capsys)
    assert code == 2 and out == "" and err


def test_parity_json_out(tmp_path, capsys):
    path = tmp_path / "parity.json"
    code, out, _ = run(["parity", "--string", "100000", "--out", str(path)], capsys)
    assert code == 0 and "outcome: 1" in out
    data = json.loads(path.read_text())
    assert data["outcome"] == 1 and data["global_phase"] == -1 and data["oracle_queries"] == 3
    assert data["final_state"][5] == pytest.approx([-1.0, 0.0], abs=1e-12)


def test_gates_dump_schema(capsys):
    code, out, _ = run(["gates-dump"], capsys)
    assert code == 0
    gates = {g["name"]: g for g in json.loads(out)}
    assert {"H_B", "U01_A", "U12_A", "Z_1", "sigma_z_B"} <= set(gates)
    h = gates["H_B"]
    assert set(h) == {"name", "matrix", "schedule", "global_phase"}
    assert np.array(h["matrix"]).shape == (7, 7, 2)
    assert set(h["schedule"][0]) == {"n", "m", "theta", "duration"}
    assert all(p["duration"] > 0 for g in gates.values() for p in g["schedule"])
    assert gates["sigma_z_B"]["schedule"] == []


def test_verify_passes(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert "64/64" in out and "6/6" in out
    assert "0 failed" in out


def test_writes_only_to_out_path(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    target = tmp_path / "only.json"
    run(["gates-dump", "--out", str(target)], capsys)
    run(["parity", "--string", "111111"], capsys)
    assert os.listdir(tmp_path) == ["only.json"]
