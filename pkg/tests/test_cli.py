import io
import json
from pathlib import Path

import pandas as pd
import pytest

from constants import Constants
from main import main

SCHEMA = Path(__file__).resolve().parent.parent / "schemas" / "simulation_summary.schema.json"

_JSON_TYPES = {
    "string": lambda v: isinstance(v, str),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "boolean": lambda v: isinstance(v, bool),
    "array": lambda v: isinstance(v, list),
    "null": lambda v: v is None,
}


def _check_against_schema(instance, schema):
    """Check an object against the subset of JSON Schema the summary schema uses."""
    assert isinstance(instance, dict)
    missing = set(schema["required"]) - set(instance)
    assert not missing, f"missing keys {missing}"
    if schema.get("additionalProperties") is False:
        assert set(instance) <= set(schema["properties"])
    for key, value in instance.items():
        rule = schema["properties"][key]
        types = rule["type"] if isinstance(rule["type"], list) else [rule["type"]]
        assert any(_JSON_TYPES[t](value) for t in types), f"{key}={value!r} is not {types}"
        if value is None:
            continue
        if "enum" in rule:
            assert value in rule["enum"], f"{key}={value!r} not in {rule['enum']}"
        if "minimum" in rule:
            assert value >= rule["minimum"], f"{key}={value!r} below {rule['minimum']}"
        if isinstance(value, list):
            assert rule.get("minItems", 0) <= len(value) <= rule.get("maxItems", len(value))
            item_type = rule["items"]["type"]
            assert all(_JSON_TYPES[item_type](item) for item in value)


def _simulate_args(output, workers, extra=()):
    return [
        "simulate", "--event", "cutset-reciprocal", "--pairs", "1", "--antennas", "1",
        "--r", "0.1", "--snr", "10:5:20", "--trials", "100000", "--seed", "77",
        "--workers", str(workers), "--output", str(output), *extra,
    ]


def test_curve_writes_vertices(capsys):
    assert main(["curve", "--scheme", "ppc", "--m", "2", "--n", "2"]) == Constants.EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines() == ["r,d", "0.0,4.0", "1.0,1.0", "2.0,0.0"]
    assert "\r" not in out


def test_curve_json(capsys):
    assert main(["curve", "--scheme", "mac-sym", "--m", "1", "--n", "6", "--users", "3", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vertices"][0] == [0.0, 6.0]
    assert payload["vertices"][-1][1] == 0.0


def test_curve_bad_antennas_exit_code(capsys):
    assert main(["curve", "--scheme", "ppc", "--m", "0", "--n", "1"]) == Constants.EXIT_BAD_ARGUMENTS
    assert "error" in capsys.readouterr().err


def test_unknown_figure_exit_code():
    assert main(["figure", "--id", "4"]) == Constants.EXIT_BAD_ARGUMENTS


def test_figure_two_values(capsys):
    assert main(["figure", "--id", "2", "--r-step", "0.05"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(frame.columns) == ["r", "d_macbc", "d_mactdma", "d_upper"]
    row = frame[frame["r"] == 0.1].iloc[0]
    assert row["d_macbc"] == pytest.approx(4.8, abs=1e-6)
    assert row["d_mactdma"] == pytest.approx(3.6, abs=1e-6)
    assert row["d_upper"] == pytest.approx(4.8)


def test_figure_one_and_three_columns(tmp_path):
    out = tmp_path / "fig1.csv"
    assert main(["figure", "--id", "1", "--r-step", "0.1", "--antennas", "4", "6", "--output", str(out)]) == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["r", "d_lower_M4", "d_upper_M4", "d_lower_M6", "d_upper_M6"]
    assert frame["r"].iloc[-1] == pytest.approx(0.5)

    out3 = tmp_path / "fig3.csv"
    assert main(["figure", "--id", "3", "--r-step", "0.05", "--antennas", "6", "--output", str(out3)]) == 0
    frame = pd.read_csv(out3)
    assert frame["r"].iloc[-1] == pytest.approx(0.25)
    assert (frame["d_ddf_M6"] - frame["d_upper_M6"]).abs().max() < 1e-3


def test_bound_command(tmp_path):
    out = tmp_path / "bound.json"
    args = ["bound", "--pairs", "3", "--antennas", "6", "--scheme", "mac-tdma", "--r-step", "0.05",
            "--format", "json", "--output", str(out)]
    assert main(args) == 0
    payload = json.loads(out.read_text())
    assert payload["zero_crossing"] == pytest.approx(0.25, abs=1e-6)
    rows = {round(row["r"], 6): row for row in payload["rows"]}
    assert rows[0.1]["d_lower"] == pytest.approx(3.6, abs=1e-6)
    assert rows[0.1]["a_star"] == pytest.approx(0.25, abs=1e-6)


def test_ddf_command_with_converse(capsys):
    assert main(["ddf", "--pairs", "1", "--antennas", "1", "--r-step", "0.1", "--with-converse"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(frame.columns) == ["r", "d_ddf", "d_upper", "argmin_L", "d_converse"]
    row = frame[frame["r"] == 0.1].iloc[0]
    assert row["d_ddf"] == pytest.approx(0.875, abs=1e-6)
    assert row["d_converse"] == pytest.approx(8.0 / 9.0, abs=1e-3)
    assert row["argmin_L"] == 2


def test_bad_r_grid_exit_code():
    assert main(["bound", "--pairs", "1", "--antennas", "1", "--r-start", "0.4", "--r-stop", "0.1"]) == 2


def test_simulate_refuses_four_pairs(tmp_path):
    args = ["simulate", "--event", "ddf", "--pairs", "4", "--antennas", "2", "--r", "0.1",
            "--snr", "10:5:20", "--trials", "100", "--output", str(tmp_path / "x.csv")]
    assert main(args) == Constants.EXIT_REFUSED


def test_simulate_static_phases_needs_split(tmp_path):
    args = ["simulate", "--event", "static-phases", "--pairs", "1", "--antennas", "1", "--r", "0.1",
            "--snr", "10:5:20", "--trials", "100", "--output", str(tmp_path / "x.csv")]
    assert main(args) == Constants.EXIT_BAD_ARGUMENTS


def test_simulate_is_byte_identical_across_workers(tmp_path):
    first = tmp_path / "w1.csv"
    assert main(_simulate_args(first, 1)) == 0
    for workers in (4, 16):
        other = tmp_path / f"w{workers}.csv"
        assert main(_simulate_args(other, workers)) == 0
        assert other.read_bytes() == first.read_bytes()
        assert other.with_suffix(".json").read_bytes() == first.with_suffix(".json").read_bytes()

    frame = pd.read_csv(first)
    assert list(frame.columns) == ["snr_db", "trials", "outages", "p_hat", "std_err"]
    assert list(frame["snr_db"]) == [10.0, 15.0, 20.0]


def test_simulate_summary_follows_schema(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(_simulate_args(out, 1)) == 0
    summary = json.loads(out.with_suffix(".json").read_text())
    schema = json.loads(SCHEMA.read_text())
    _check_against_schema(summary, schema)
    assert summary["event"] == "cutset-reciprocal"
    assert summary["mode"] == "reciprocal"
    assert summary["seed"] == 77
    assert summary["analytic_d"] == pytest.approx(0.8)


def test_simulate_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SWITCHDMT_SEED", "31337")
    out = tmp_path / "env.csv"
    args = ["simulate", "--event", "cutset-reciprocal", "--pairs", "1", "--antennas", "1", "--r", "0.1",
            "--snr", "10,15,20", "--trials", "1000", "--output", str(out)]
    assert main(args) == 0
    assert json.loads(out.with_suffix(".json").read_text())["seed"] == 31337


def test_summary_schema_rejects_bad_values():
    schema = json.loads(SCHEMA.read_text())
    good = {"event": "ddf", "pairs": 1, "antennas": 1, "mode": "nonreciprocal", "r": 0.1, "seed": 1,
            "trials": 10, "fit_status": "ok", "fit_window": [20.0, 40.0]}
    _check_against_schema(good, schema)
    for key, bad in [("mode", "duplex"), ("pairs", 0), ("trials", 1.5), ("fit_status", "maybe"), ("fit_window", [1.0])]:
        with pytest.raises(AssertionError):
            _check_against_schema({**good, key: bad}, schema)


def test_simulate_csv_needs_output_path(capsys):
    args = ["simulate", "--event", "cutset-reciprocal", "--pairs", "1", "--antennas", "1", "--r", "0.1",
            "--snr", "10:5:20", "--trials", "100"]
    assert main(args) == Constants.EXIT_BAD_ARGUMENTS
    assert "--output" in capsys.readouterr().err


def test_mac_sym_curve_keeps_branch_vertex(capsys):
    assert main(["curve", "--scheme", "mac-sym", "--users", "6", "--m", "1", "--n", "6", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    rs = [r for r, _ in payload["vertices"]]
    assert any(r == pytest.approx(6.0 / 7.0, abs=1e-12) for r in rs)
    vertex = next(v for v in payload["vertices"] if v[0] == pytest.approx(6.0 / 7.0, abs=1e-12))
    assert vertex[1] == pytest.approx(6.0 / 7.0)
    assert payload["max_multiplexing_gain"] == pytest.approx(1.0)


def test_figure_one_six_antennas_bounds_coincide(capsys):
    assert main(["figure", "--id", "1", "--antennas", "6"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(frame) == 101
    assert (frame["d_lower_M6"] - frame["d_upper_M6"]).abs().max() < 1e-6
