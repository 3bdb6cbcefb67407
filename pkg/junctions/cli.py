#!/usr/bin/env python3
"""
cli.py

Command line for the junction detector:

- detect     cluster a scan file and report the junction count
- simulate   cast a synthetic scan from a builtin scenario or an environment file
- bench      time repeated detections on a builtin scenario
- scenarios  list the builtin scenarios

Exit codes: 0 success, 1 detection / file error, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from junctions.core_types import EIGEN_SOLVERS, DetectorParams, JunctionReport
from junctions.errors import JunctionError
from junctions.io_formats import (
    SCAN_FORMATS,
    load_cloud,
    load_environment,
    render_svg,
    write_cloud,
    write_polar,
    write_report,
)
from junctions.pipeline import benchmark, detect_junctions
from junctions.scan_sim import LidarConfig, cast_ranges, polar_to_cloud
from junctions.scenarios import builtin_scenario, list_scenarios

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
    )


# -----------------------------
# Argument parsing
# -----------------------------

def build_argparser() -> argparse.ArgumentParser:
    defaults = DetectorParams()
    p = argparse.ArgumentParser(
        prog="junctions",
        description="Count tunnel junctions in a 2D lidar scan by spectral clustering of wall points.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="Debug logging to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    d = sub.add_parser("detect", help="Detect junctions in a scan file")
    d.add_argument("-i", "--input", required=True, help="Scan file")
    d.add_argument(
        "--format",
        choices=SCAN_FORMATS,
        required=True,
        help="xy-csv: 'x,y' in metres; polar-csv: 'angle_deg,range_m' with angles in degrees "
        "and 'inf' or range >= --max-range meaning no return",
    )
    d.add_argument("--max-range", type=float, default=15.0, help="polar-csv no-return cutoff in m (default: 15)")
    d.add_argument("--sigma", type=float, default=defaults.sigma, help="RBF decay in 1/m^2 (default: 1.5)")
    d.add_argument("--floor", type=float, default=defaults.similarity_floor, help="Similarity floor (default: 1e-8)")
    d.add_argument("--zero-tol", type=float, default=defaults.zero_eig_tol, help="Zero-eigenvalue tolerance (default: 1e-8)")
    d.add_argument("--seed", type=int, default=defaults.rng_seed, help="k-means seed (default: 0)")
    d.add_argument("--restarts", type=int, default=defaults.kmeans_restarts, help="k-means restarts (default: 10)")
    d.add_argument("--solver", choices=EIGEN_SOLVERS, default=defaults.eigen_solver, help="Eigen solver (default: lapack)")
    d.add_argument("--no-row-normalize", action="store_true", help="Cluster raw eigenvector rows")
    d.add_argument("--report", help="Write a JSON report here")
    d.add_argument("--reproducible", action="store_true", help="Write runtime_seconds as 0.0 in the report")
    d.add_argument("--svg", help="Write an SVG plot of the clustered walls here")
    d.set_defaults(handler=cmd_detect)

    s = sub.add_parser("simulate", help="Cast a synthetic lidar scan")
    source = s.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", help="Builtin scenario name (see 'scenarios')")
    source.add_argument("--env", help="Environment file with 'wall x1 y1 x2 y2' lines")
    s.add_argument("--format", choices=SCAN_FORMATS, default="xy-csv", help="Output format (default: xy-csv)")
    s.add_argument("--noise", type=float, default=0.0, help="Radial noise stddev in m (default: 0)")
    s.add_argument("--seed", type=int, default=0, help="Noise seed (default: 0)")
    s.add_argument("-o", "--out", required=True, help="Output scan file")
    s.add_argument("--svg", help="Also detect and plot the scan here")
    s.set_defaults(handler=cmd_simulate)

    b = sub.add_parser("bench", help="Time repeated detections")
    b.add_argument("--scenario", required=True, help="Builtin scenario name")
    b.add_argument("--repeat", type=int, default=10, help="Number of runs (default: 10)")
    b.add_argument("--seed", type=int, default=0, help="Scan noise seed (default: 0)")
    b.set_defaults(handler=cmd_bench)

    sc = sub.add_parser("scenarios", help="List builtin scenarios")
    sc.set_defaults(handler=cmd_scenarios)
    return p


# -----------------------------
# Subcommands
# -----------------------------

def _print_summary(report: JunctionReport) -> None:
    print(f"junctions: {report.num_junctions}")
    print(f"points: {report.num_points}")
    print(f"runtime: {report.runtime:.4f} s")
    if report.quality_warning:
        print(f"warning: {report.quality_warning}")
    for w in report.walls:
        print(
            f"  wall {w.label}: {w.size} pts, centroid ({w.centroid.x:.2f}, {w.centroid.y:.2f}) m, "
            f"bearing {w.bearing_deg:.1f} deg, extent {w.extent_m:.2f} m"
        )


def cmd_detect(args: argparse.Namespace) -> int:
    cloud = load_cloud(args.input, args.format, max_range=args.max_range)
    params = DetectorParams(
        sigma=args.sigma,
        similarity_floor=args.floor,
        zero_eig_tol=args.zero_tol,
        kmeans_restarts=args.restarts,
        rng_seed=args.seed,
        row_normalize=not args.no_row_normalize,
        eigen_solver=args.solver,
    )
    report = detect_junctions(cloud, params)
    _print_summary(report)

    if args.report:
        write_report(report, args.report, include_runtime=not args.reproducible)
    if args.svg:
        render_svg(cloud, report.labels, args.svg)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.scenario:
        env, expected = builtin_scenario(args.scenario)
    else:
        env, expected = load_environment(args.env), None

    cfg = LidarConfig(noise_stddev=args.noise)
    angles, ranges = cast_ranges(env, cfg, rng_seed=args.seed)
    cloud = polar_to_cloud(angles, ranges)

    if args.format == "polar-csv":
        write_polar(angles, ranges, args.out)
    else:
        write_cloud(cloud, args.out)

    hits = len(cloud)
    print(f"scenario: {env.name}")
    print(f"points: {hits}/{cfg.num_beams}")
    if expected is not None:
        print(f"expected junctions: {expected}")
    print(f"wrote: {args.out}")

    if args.svg:
        report = detect_junctions(cloud)
        render_svg(cloud, report.labels, args.svg)
        print(f"junctions: {report.num_junctions}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    result = benchmark(args.scenario, repeat=args.repeat, seed=args.seed)
    print(f"scenario: {result.scenario} ({len(result.runs)} runs)")
    print(f"mean: {result.mean:.4f} s")
    print(f"min: {result.min:.4f} s")
    print(f"max: {result.max:.4f} s")
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    for s in list_scenarios():
        print(f"{s.name:<10} {s.expected_junctions}  {s.label}")
    return EXIT_OK


# -----------------------------
# Entry point
# -----------------------------

def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_argparser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        # --help exits 0, everything else argparse rejects is a usage error
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args.verbose)
    try:
        return args.handler(args)
    except (JunctionError, OSError) as e:
        logger.debug("command '%s' failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
