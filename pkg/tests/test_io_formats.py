import json

import numpy as np
import pytest

from junctions.core_types import PointCloud
from junctions.errors import CloudFormatError, EmptyFileError, ParamError
from junctions.io_formats import (
    PALETTE,
    load_cloud,
    load_environment,
    read_report,
    render_svg,
    report_to_dict,
    write_cloud,
    write_environment,
    write_polar,
    write_report,
)
from junctions.pipeline import detect_junctions
from junctions.scan_sim import LidarConfig, cast_ranges
from junctions.scenarios import builtin_scenario
from tests.helpers import scenario_scan

REPORT_KEYS = ["num_junctions", "labels", "eigenvalues_head", "objective", "runtime_seconds", "params"]


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# -----------------------------
# Scan files
# -----------------------------

def test_xy_csv(tmp_path):
    cloud = load_cloud(_write(tmp_path, "a.csv", "0,0\n1,0\n"), "xy-csv")
    assert cloud.xy.tolist() == [[0.0, 0.0], [1.0, 0.0]]


def test_polar_csv_converts_degrees(tmp_path):
    cloud = load_cloud(_write(tmp_path, "p.csv", "0,5.0\n90,5.0\n"), "polar-csv")
    assert np.allclose(cloud.xy, [[5.0, 0.0], [0.0, 5.0]], atol=1e-9)


def test_polar_csv_drops_no_returns(tmp_path):
    assert len(load_cloud(_write(tmp_path, "p.csv", "0,inf\n90,5.0\n"), "polar-csv")) == 1
    assert len(load_cloud(_write(tmp_path, "q.csv", "0,15.0\n90,5.0\n180,20\n"), "polar-csv")) == 1
    assert len(load_cloud(_write(tmp_path, "r.csv", "0,15.0\n90,5.0\n"), "polar-csv", max_range=30.0)) == 2


def test_blank_lines_are_skipped(tmp_path):
    cloud = load_cloud(_write(tmp_path, "a.csv", "0,0\n\n2,1\n"), "xy-csv")
    assert len(cloud) == 2


def test_bad_number_reports_line(tmp_path):
    with pytest.raises(CloudFormatError) as err:
        load_cloud(_write(tmp_path, "a.csv", "0,0\n\nfoo,1\n"), "xy-csv")
    assert err.value.line == 3
    assert ":3:" in str(err.value)


def test_missing_field_reports_line(tmp_path):
    with pytest.raises(CloudFormatError) as err:
        load_cloud(_write(tmp_path, "a.csv", "0,0\n1\n"), "xy-csv")
    assert err.value.line == 2


def test_extra_field_reports_line(tmp_path):
    with pytest.raises(CloudFormatError) as err:
        load_cloud(_write(tmp_path, "a.csv", "0,0\n1,2,3\n"), "xy-csv")
    assert err.value.line == 2


def test_infinite_xy_rejected(tmp_path):
    with pytest.raises(CloudFormatError) as err:
        load_cloud(_write(tmp_path, "a.csv", "0,0\n1,inf\n"), "xy-csv")
    assert err.value.line == 2


def test_negative_range_rejected(tmp_path):
    with pytest.raises(CloudFormatError) as err:
        load_cloud(_write(tmp_path, "p.csv", "0,1\n10,-1\n"), "polar-csv")
    assert err.value.line == 2


@pytest.mark.parametrize("text", ["", "\n\n"])
def test_empty_file(tmp_path, text):
    with pytest.raises(EmptyFileError):
        load_cloud(_write(tmp_path, "e.csv", text), "xy-csv")


@pytest.mark.parametrize("fmt", ["xy-csv", "polar-csv"])
def test_non_utf8_scan_reports_line(tmp_path, fmt):
    path = tmp_path / "bin.csv"
    path.write_bytes(b"0,1\n1,1\n\xff\xfe,1\n")
    with pytest.raises(CloudFormatError, match="UTF-8") as err:
        load_cloud(str(path), fmt)
    assert err.value.line == 3


def test_missing_file_is_os_error(tmp_path):
    with pytest.raises(OSError):
        load_cloud(str(tmp_path / "missing.csv"), "xy-csv")


def test_unknown_format(tmp_path):
    with pytest.raises(ParamError):
        load_cloud(_write(tmp_path, "a.csv", "0,0\n"), "las")


@pytest.mark.parametrize("fmt", ["xy-csv", "polar-csv"])
def test_scan_round_trip(tmp_path, fmt):
    cloud, _ = scenario_scan("T", seed=1, noise=0.05)
    path = str(tmp_path / "scan.csv")
    write_cloud(cloud, path, fmt)
    loaded = load_cloud(path, fmt, max_range=100.0)
    assert np.abs(loaded.xy - cloud.xy).max() <= 1e-9


def test_polar_writer_marks_no_returns(tmp_path):
    env, _ = builtin_scenario("straight")
    angles, ranges = cast_ranges(env, LidarConfig())
    path = str(tmp_path / "polar.csv")
    write_polar(angles, ranges, path)
    lines = open(path).read().splitlines()
    assert len(lines) == 360
    assert lines[0].endswith(",inf")
    assert len(load_cloud(path, "polar-csv")) == int(np.isfinite(ranges).sum())


# -----------------------------
# Environment files
# -----------------------------

def test_environment_file(tmp_path):
    text = "# two walls\nname corridor\nwall -10 2 10 2\nwall -10 -2 10 -2  # bottom\n"
    env = load_environment(_write(tmp_path, "c.env", text))
    assert env.name == "corridor"
    assert len(env.walls) == 2
    assert env.walls[1].a.y == -2.0


def test_environment_round_trip(tmp_path):
    env, _ = builtin_scenario("five-way")
    path = str(tmp_path / "five.env")
    write_environment(env, path)
    loaded = load_environment(path)
    assert loaded.name == "five-way"
    assert np.array_equal(loaded.as_array(), env.as_array())


@pytest.mark.parametrize(
    "text, line",
    [
        ("wall 0 0 1 1\nwal 0 0 1 1\n", 2),
        ("wall 0 0 1\n", 1),
        ("# c\nwall 0 0 x 1\n", 2),
        ("wall 0 0 0 0\n", 1),
    ],
)
def test_environment_errors_carry_line(tmp_path, text, line):
    with pytest.raises(CloudFormatError) as err:
        load_environment(_write(tmp_path, "bad.env", text))
    assert err.value.line == line


def test_non_utf8_environment_reports_line(tmp_path):
    path = tmp_path / "bin.env"
    path.write_bytes(b"# walls\nwall 0 0 1 0\nwall \xe9 0 0 1\n")
    with pytest.raises(CloudFormatError, match="UTF-8") as err:
        load_environment(str(path))
    assert err.value.line == 3


def test_environment_without_walls(tmp_path):
    with pytest.raises(EmptyFileError):
        load_environment(_write(tmp_path, "none.env", "# nothing\nname empty\n"))


# -----------------------------
# Reports
# -----------------------------

def test_report_keys_and_round_trip(tmp_path, t_scan):
    report = detect_junctions(t_scan)
    path = str(tmp_path / "r.json")
    write_report(report, path)
    data = read_report(path)
    assert list(data) == REPORT_KEYS
    assert data["num_junctions"] == 3
    assert len(data["labels"]) == len(t_scan)
    assert data == json.loads(json.dumps(report_to_dict(report)))
    assert data["params"]["sigma"] == 1.5
    assert data["objective"] == report.objective


def test_straight_report_has_two_junctions(tmp_path):
    cloud, _ = scenario_scan("straight")
    path = str(tmp_path / "s.json")
    write_report(detect_junctions(cloud), path)
    assert '"num_junctions": 2' in open(path).read()


def test_report_without_runtime_is_byte_stable(tmp_path, t_scan):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    write_report(detect_junctions(t_scan), a, include_runtime=False)
    write_report(detect_junctions(t_scan), b, include_runtime=False)
    assert open(a, "rb").read() == open(b, "rb").read()
    assert read_report(a)["runtime_seconds"] == 0.0


# -----------------------------
# SVG
# -----------------------------

def _palette_colours(svg_text):
    return {c for c in PALETTE if c in svg_text}


def test_svg_uses_one_colour_per_wall(tmp_path, t_scan):
    report = detect_junctions(t_scan)
    path = str(tmp_path / "t.svg")
    render_svg(t_scan, report.labels, path)
    text = open(path).read()
    assert _palette_colours(text) == set(PALETTE[:3])
    assert "3 junctions" in text


def test_svg_draws_a_circle_per_point(tmp_path, t_scan):
    labels = detect_junctions(t_scan).labels
    path = str(tmp_path / "t.svg")
    render_svg(t_scan, labels, path)
    text = open(path).read()
    for label in set(labels):
        assert text.count(PALETTE[label]) >= list(labels).count(label)


def test_svg_single_point(tmp_path):
    path = str(tmp_path / "one.svg")
    render_svg(PointCloud(np.array([[1.0, 1.0]])), [0], path)
    assert _palette_colours(open(path).read()) == {PALETTE[0]}


def test_svg_is_deterministic(tmp_path, t_scan):
    labels = detect_junctions(t_scan).labels
    a, b = str(tmp_path / "a.svg"), str(tmp_path / "b.svg")
    render_svg(t_scan, labels, a)
    render_svg(t_scan, labels, b)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_svg_label_count_must_match(tmp_path, t_scan):
    with pytest.raises(ParamError):
        render_svg(t_scan, [0], str(tmp_path / "x.svg"))
