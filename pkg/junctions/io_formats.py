# io_formats.py
"""
io_formats.py

Files in and out:

- scan files: xy-csv (`x,y` in metres) and polar-csv (`angle_deg,range_m`,
  `inf` or any range >= max_range is a no-return and is dropped on load)
- environment files: one `wall x1 y1 x2 y2` per line, optional `name <label>`,
  `#` starts a comment
- JSON detection reports with a fixed key order
- SVG plots of a clustered scan, one circle per point and one colour per wall

Errors in scan and environment files carry the 1-based line number.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
import re
from typing import Any, Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from matplotlib.patches import Circle
from matplotlib.ticker import MultipleLocator

from junctions.core_types import Point2, PointCloud, JunctionReport
from junctions.errors import CloudFormatError, EmptyFileError, ParamError
from junctions.scan_sim import Environment, Segment

logger = logging.getLogger(__name__)

SCAN_FORMATS: Tuple[str, ...] = ("xy-csv", "polar-csv")

FLOAT_FORMAT = "%.17g"

# Fixed palette, cycled when there are more walls than colours
PALETTE: Tuple[str, ...] = (
    "#e6194b",
    "#3cb44b",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#42d4f4",
    "#f032e6",
    "#9a6324",
    "#800000",
    "#469990",
)

SVG_HASH_SALT = "junctions"
# Drawn radius of one scan point, m
POINT_RADIUS = 0.08

_PARSER_LINE = re.compile(r"line (\d+)")


# -----------------------------
# Scan files
# -----------------------------

def _check_format(fmt: str) -> None:
    if fmt not in SCAN_FORMATS:
        raise ParamError(f"unknown scan format '{fmt}' (expected one of {', '.join(SCAN_FORMATS)})")


def _utf8_error(path: str, err: UnicodeDecodeError) -> CloudFormatError:
    """Parse error for a file that is not UTF-8, on the line of the first bad byte."""
    with open(path, "rb") as f:
        data = f.read()
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as e:
        return CloudFormatError(path, "not valid UTF-8 text", data.count(b"\n", 0, e.start) + 1)
    return CloudFormatError(path, f"not valid UTF-8 text ({err.reason})")


def _read_table(path: str) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path,
            header=None,
            dtype=str,
            skip_blank_lines=False,
            keep_default_na=False,
            encoding="utf-8",
        )
    except UnicodeDecodeError as e:
        raise _utf8_error(path, e) from e
    except pd.errors.EmptyDataError as e:
        raise EmptyFileError(path, "file contains no data rows") from e
    except pd.errors.ParserError as e:
        m = _PARSER_LINE.search(str(e))
        raise CloudFormatError(path, f"malformed row: {e}", int(m.group(1)) if m else None) from e


def _numeric_rows(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    Two numeric columns plus the 1-based line number of each data row.

    Blank lines are skipped; anything else must be exactly two numbers.
    """
    table = _read_table(path).fillna("")
    text = table.apply(lambda col: col.astype(str).str.strip())
    blank = (text == "").all(axis=1)
    text = text[~blank]
    if text.empty:
        raise EmptyFileError(path, "file contains no data rows")

    lines = text.index.to_numpy() + 1
    filled = (text != "").sum(axis=1).to_numpy()
    if text.shape[1] < 2 or (filled != 2).any() or (text.iloc[:, 2:] != "").any(axis=None):
        bad = int(lines[np.flatnonzero((filled != 2) | (text.iloc[:, :2] == "").any(axis=1).to_numpy())[0]])
        raise CloudFormatError(path, "expected exactly two comma-separated values", bad)

    values = text.iloc[:, :2].apply(lambda col: pd.to_numeric(col, errors="coerce")).to_numpy(dtype=np.float64)
    nan_rows = np.isnan(values).any(axis=1)
    if nan_rows.any():
        i = int(np.flatnonzero(nan_rows)[0])
        raw = ",".join(text.iloc[i, :2])
        raise CloudFormatError(path, f"cannot parse '{raw}' as two numbers", int(lines[i]))
    return values, lines


def load_cloud(path: str, fmt: str = "xy-csv", max_range: float = 15.0) -> PointCloud:
    _check_format(fmt)
    values, lines = _numeric_rows(path)

    if fmt == "xy-csv":
        finite = np.isfinite(values).all(axis=1)
        if not finite.all():
            i = int(np.flatnonzero(~finite)[0])
            raise CloudFormatError(path, "coordinates must be finite", int(lines[i]))
        cloud = PointCloud.from_xy(values)
    else:
        angles, ranges = values[:, 0], values[:, 1]
        bad_angle = ~np.isfinite(angles)
        if bad_angle.any():
            raise CloudFormatError(path, "angle must be finite", int(lines[np.flatnonzero(bad_angle)[0]]))
        negative = ranges < 0
        if negative.any():
            raise CloudFormatError(path, "range must be >= 0", int(lines[np.flatnonzero(negative)[0]]))
        keep = np.isfinite(ranges) & (ranges < max_range)
        dropped = int((~keep).sum())
        if dropped:
            logger.info("%s: dropped %d no-return beam(s)", path, dropped)
        theta = np.radians(angles[keep])
        r = ranges[keep]
        cloud = PointCloud.from_xy(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))

    logger.info("loaded %d points from %s (%s)", len(cloud), path, fmt)
    return cloud


def write_cloud(cloud: PointCloud, path: str, fmt: str = "xy-csv") -> None:
    """Write a cloud as xy-csv, or as polar-csv with one row per point."""
    _check_format(fmt)
    if fmt == "polar-csv":
        x, y = cloud.xy[:, 0], cloud.xy[:, 1]
        write_polar(np.arctan2(y, x), np.hypot(x, y), path)
        return
    pd.DataFrame(cloud.xy).to_csv(path, header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("wrote %d points to %s", len(cloud), path)


def write_polar(angles_rad: np.ndarray, ranges: np.ndarray, path: str) -> None:
    """Write a polar-csv file; no-return beams (+inf) are written as `inf`."""
    frame = pd.DataFrame({"angle_deg": np.degrees(angles_rad), "range_m": np.asarray(ranges, dtype=np.float64)})
    frame.to_csv(path, header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("wrote %d beams to %s", len(frame), path)


# -----------------------------
# Environment files
# -----------------------------

def load_environment(path: str) -> Environment:
    walls: List[Segment] = []
    name: Optional[str] = None

    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise _utf8_error(path, e) from e

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].lower()
        if key == "name":
            name = " ".join(parts[1:]) or None
            continue
        if key != "wall" or len(parts) != 5:
            raise CloudFormatError(path, "expected 'wall x1 y1 x2 y2' or 'name <label>'", lineno)
        try:
            x1, y1, x2, y2 = (float(v) for v in parts[1:])
        except ValueError as e:
            raise CloudFormatError(path, f"bad coordinate: {e}", lineno) from e
        if not all(math.isfinite(v) for v in (x1, y1, x2, y2)):
            raise CloudFormatError(path, "coordinates must be finite", lineno)
        if (x1, y1) == (x2, y2):
            raise CloudFormatError(path, "wall has zero length", lineno)
        walls.append(Segment(Point2(x1, y1), Point2(x2, y2)))

    if not walls:
        raise EmptyFileError(path, "environment has no walls")
    return Environment(walls=tuple(walls), name=name or path)


def write_environment(env: Environment, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# {len(env.walls)} walls\n")
        f.write(f"name {env.name}\n")
        for w in env.walls:
            f.write(f"wall {w.a.x:.17g} {w.a.y:.17g} {w.b.x:.17g} {w.b.y:.17g}\n")


# -----------------------------
# Reports
# -----------------------------

def report_to_dict(report: JunctionReport, include_runtime: bool = True) -> Dict[str, Any]:
    return {
        "num_junctions": int(report.num_junctions),
        "labels": [int(v) for v in report.labels],
        "eigenvalues_head": [float(v) for v in report.eigenvalues_head],
        "objective": float(report.objective),
        "runtime_seconds": float(report.runtime) if include_runtime else 0.0,
        "params": dataclasses.asdict(report.params),
    }


def write_report(report: JunctionReport, path: str, include_runtime: bool = True) -> None:
    """
    JSON report. Python's float repr keeps 17 significant digits.

    include_runtime=False writes runtime_seconds as 0.0 so that repeated runs
    produce identical bytes.
    """
    text = json.dumps(report_to_dict(report, include_runtime), indent=2)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    logger.info("wrote report to %s", path)


def read_report(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


# -----------------------------
# SVG
# -----------------------------

def cluster_colors(labels: Sequence[int]) -> List[str]:
    return [PALETTE[int(lab) % len(PALETTE)] for lab in labels]


def render_svg(cloud: PointCloud, labels: Sequence[int], path: str) -> None:
    if len(labels) != len(cloud):
        raise ParamError(f"{len(labels)} labels for {len(cloud)} points")
    k = len(set(int(v) for v in labels))

    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig = Figure(figsize=(8, 8))
        ax = fig.add_subplot(1, 1, 1)
        for (x, y), colour in zip(cloud.xy, cluster_colors(labels)):
            ax.add_patch(Circle((x, y), POINT_RADIUS, facecolor=colour, edgecolor="none", zorder=3))
        ax.plot([0.0], [0.0], marker="+", color="black", markersize=14, linestyle="none", zorder=4)
        ax.set_title(f"{k} junctions")
        ax.set_aspect("equal", adjustable="datalim")
        ax.margins(0.05)
        ax.autoscale_view()
        ax.xaxis.set_major_locator(MultipleLocator(5.0))
        ax.yaxis.set_major_locator(MultipleLocator(5.0))
        ax.xaxis.set_minor_locator(MultipleLocator(1.0))
        ax.yaxis.set_minor_locator(MultipleLocator(1.0))
        ax.grid(True, which="both", color="#dddddd", linewidth=0.5, zorder=0)
        ax.set_xlabel("x [m]")
        ax.set_ylabel("y [m]")
        fig.savefig(path, format="svg", metadata={"Date": None})

    logger.info("wrote plot with %d cluster(s) to %s", k, path)


__all__ = [
    "SCAN_FORMATS",
    "PALETTE",
    "load_cloud",
    "write_cloud",
    "write_polar",
    "load_environment",
    "write_environment",
    "report_to_dict",
    "write_report",
    "read_report",
    "cluster_colors",
    "render_svg",
]
