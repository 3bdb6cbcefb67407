import json

import pytest

from junctions.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, cli_main
from junctions.io_formats import write_cloud
from tests.helpers import scenario_scan


@pytest.fixture
def t_csv(tmp_path):
    path = str(tmp_path / "t.csv")
    write_cloud(scenario_scan("T")[0], path)
    return path


def test_detect_prints_junction_count(t_csv, capsys):
    assert cli_main(["detect", "--input", t_csv, "--format", "xy-csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "junctions: 3" in out
    assert "runtime:" in out
    assert out.count("  wall ") == 3


def test_simulate_then_detect(tmp_path, capsys):
    scan = str(tmp_path / "x.csv")
    assert cli_main(["simulate", "--scenario", "X", "--out", scan]) == EXIT_OK
    assert "expected junctions: 4" in capsys.readouterr().out
    assert cli_main(["detect", "--input", scan, "--format", "xy-csv"]) == EXIT_OK
    assert "junctions: 4" in capsys.readouterr().out


def test_simulate_polar_then_detect(tmp_path, capsys):
    scan = str(tmp_path / "t_polar.csv")
    assert cli_main(["simulate", "--scenario", "T", "--format", "polar-csv", "--noise", "0.02", "--out", scan]) == EXIT_OK
    assert cli_main(["detect", "--input", scan, "--format", "polar-csv"]) == EXIT_OK
    assert "junctions: 3" in capsys.readouterr().out


def test_simulate_from_environment_file(tmp_path, capsys):
    env = tmp_path / "room.env"
    env.write_text("name room\nwall -5 -5 5 -5\nwall 5 -5 5 5\nwall 5 5 -5 5\nwall -5 5 -5 -5\n")
    scan = str(tmp_path / "room.csv")
    svg = str(tmp_path / "room.svg")
    assert cli_main(["simulate", "--env", str(env), "--out", scan, "--svg", svg]) == EXIT_OK
    out = capsys.readouterr().out
    assert "points: 360/360" in out
    assert "junctions: 1" in out
    assert open(svg).read().startswith("<?xml")


def test_detect_missing_file_exits_1(tmp_path, capsys):
    code = cli_main(["detect", "--input", str(tmp_path / "missing.csv"), "--format", "xy-csv"])
    assert code == EXIT_FAILURE
    assert "error:" in capsys.readouterr().err


def test_parse_error_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\nnope,1\n")
    assert cli_main(["detect", "--input", str(bad), "--format", "xy-csv"]) == EXIT_FAILURE
    assert ":2:" in capsys.readouterr().err


def test_non_utf8_scan_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_bytes(b"0,0\n\xff\xfe,1\n")
    assert cli_main(["detect", "--input", str(bad), "--format", "xy-csv"]) == EXIT_FAILURE
    err = capsys.readouterr().err
    assert "UTF-8" in err
    assert ":2:" in err


def test_non_utf8_environment_exits_1(tmp_path, capsys):
    env = tmp_path / "bad.env"
    env.write_bytes(b"wall 0 0 1 0\nwall \xff 0 0 1\n")
    code = cli_main(["simulate", "--env", str(env), "--out", str(tmp_path / "o.csv")])
    assert code == EXIT_FAILURE
    assert ":2:" in capsys.readouterr().err


def test_invalid_sigma_exits_1(t_csv, capsys):
    assert cli_main(["detect", "--input", t_csv, "--format", "xy-csv", "--sigma", "0"]) == EXIT_FAILURE
    assert "sigma must be positive" in capsys.readouterr().err


def test_unknown_scenario_exits_1(tmp_path, capsys):
    assert cli_main(["simulate", "--scenario", "Y", "--out", str(tmp_path / "y.csv")]) == EXIT_FAILURE
    assert "unknown scenario" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["detect", "--input", "t.csv", "--format", "xy-csv", "--bogus"],
        ["detect"],
        ["detect", "--input", "t.csv"],
        ["detect", "--input", "t.csv", "--format", "las"],
        ["simulate", "--scenario", "T"],
        ["simulate", "--scenario", "T", "--env", "a.env", "--out", "o.csv"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli_main(argv) == EXIT_USAGE
    assert "usage:" in capsys.readouterr().err


def test_help_exits_0(capsys):
    assert cli_main(["detect", "--help"]) == EXIT_OK
    assert "degrees" in capsys.readouterr().out


def test_reproducible_reports_and_svgs(t_csv, tmp_path):
    outputs = []
    for run in ("a", "b"):
        report = str(tmp_path / f"{run}.json")
        svg = str(tmp_path / f"{run}.svg")
        argv = ["detect", "--input", t_csv, "--format", "xy-csv", "--seed", "4", "--reproducible", "--report", report, "--svg", svg]
        assert cli_main(argv) == EXIT_OK
        outputs.append((open(report, "rb").read(), open(svg, "rb").read()))
    assert outputs[0] == outputs[1]
    data = json.loads(outputs[0][0])
    assert data["runtime_seconds"] == 0.0
    assert data["params"]["rng_seed"] == 4


def test_detect_options_reach_params(t_csv, tmp_path):
    report = str(tmp_path / "r.json")
    argv = [
        "detect", "--input", t_csv, "--format", "xy-csv", "--sigma", "2.0", "--floor", "1e-6", "--zero-tol", "1e-9",
        "--restarts", "3", "--no-row-normalize", "--report", report,
    ]
    assert cli_main(argv) == EXIT_OK
    params = json.load(open(report))["params"]
    assert params["sigma"] == 2.0
    assert params["similarity_floor"] == 1e-6
    assert params["zero_eig_tol"] == 1e-9
    assert params["kmeans_restarts"] == 3
    assert params["row_normalize"] is False


def test_bench_prints_stats(capsys):
    assert cli_main(["bench", "--scenario", "T", "--repeat", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    for key in ("mean:", "min:", "max:"):
        assert key in out


def test_scenarios_lists_every_name(capsys):
    assert cli_main(["scenarios"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("straight", "L", "T", "X", "five-way", "dead-end"):
        assert name in out
