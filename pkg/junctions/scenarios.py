# scenarios.py
"""
scenarios.py

Library of hand-built tunnel environments with their ground-truth junction count.

Convention: junctions = wall clusters. A branchless corridor shows two facing
walls, so it counts 2; every extra branch opens one more gap and adds one wall.
A dead end is enclosed by three walls that meet at corners, forming a single
cluster with one way out.

Every corridor is CORRIDOR_WIDTH wide and the sensor sits at the junction
centre, heading 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from junctions.core_types import Point2
from junctions.errors import UnknownScenarioError
from junctions.scan_sim import Environment, Segment

# Facing walls must stay farther apart than the similarity cut-off radius
# (about 3.5 m for sigma 1.5, floor 1e-8).
CORRIDOR_WIDTH = 4.0
BRANCH_LENGTH = 50.0


# -----------------------------
# Scenario library
# -----------------------------

SCENARIO_LIBRARY: Dict[str, Dict[str, Any]] = {
    "straight": {
        "label": "Straight corridor, no branch",
        "branches_deg": (0.0, 180.0),
        "expected": 2,
    },
    "L": {
        "label": "Corridor turning 90 degrees",
        "branches_deg": (90.0, 180.0),
        "expected": 2,
    },
    "T": {
        "label": "Three-way junction",
        "branches_deg": (0.0, 90.0, 180.0),
        "expected": 3,
    },
    "X": {
        "label": "Four-way crossing",
        "branches_deg": (0.0, 90.0, 180.0, 270.0),
        "expected": 4,
    },
    "five-way": {
        "label": "Five branches, 72 degrees apart",
        "branches_deg": (0.0, 72.0, 144.0, 216.0, 288.0),
        "expected": 5,
    },
    "dead-end": {
        "label": "Corridor ending 3 m ahead of the sensor",
        "branches_deg": (180.0,),
        "end_wall_m": 3.0,
        "expected": 1,
    },
}


@dataclass(frozen=True)
class ScenarioSummary:
    name: str
    label: str
    expected_junctions: int


# -----------------------------
# Geometry builders
# -----------------------------

def _unit(theta: float) -> Tuple[float, float]:
    return math.cos(theta), math.sin(theta)


def _left(theta: float) -> Tuple[float, float]:
    return -math.sin(theta), math.cos(theta)


def _branch_walls(branches_deg: Sequence[float], width: float, length: float) -> List[Segment]:
    """
    One L-shaped wall between every pair of angularly adjacent branches.

    The corner sits on the bisector at (width/2)/sin(gap/2) from the centre.
    """
    half = width / 2.0
    thetas = sorted(math.radians(b) % (2 * math.pi) for b in branches_deg)
    walls: List[Segment] = []

    for i, t0 in enumerate(thetas):
        t1 = thetas[(i + 1) % len(thetas)]
        gap = (t1 - t0) % (2 * math.pi)
        mid = t0 + gap / 2.0
        r = half / math.sin(gap / 2.0)
        corner = Point2(r * math.cos(mid), r * math.sin(mid))

        u0, n0 = _unit(t0), _left(t0)
        u1, n1 = _unit(t1), _left(t1)
        # left side of the first branch, right side of the next one
        far0 = Point2(half * n0[0] + length * u0[0], half * n0[1] + length * u0[1])
        far1 = Point2(-half * n1[0] + length * u1[0], -half * n1[1] + length * u1[1])
        walls.append(Segment(corner, far0))
        walls.append(Segment(corner, far1))

    return walls


def _dead_end_walls(end_wall_m: float, width: float, length: float) -> List[Segment]:
    half = width / 2.0
    top_end = Point2(end_wall_m, half)
    bottom_end = Point2(end_wall_m, -half)
    return [
        Segment(Point2(-length, half), top_end),
        Segment(top_end, bottom_end),
        Segment(bottom_end, Point2(-length, -half)),
    ]


def _canonical_name(name: str) -> str:
    key = str(name).strip()
    for known in SCENARIO_LIBRARY:
        if key.lower() == known.lower():
            return known
    known_names = ", ".join(SCENARIO_LIBRARY)
    raise UnknownScenarioError(f"unknown scenario '{name}' (known: {known_names})")


def builtin_scenario(name: str) -> Tuple[Environment, int]:
    """Environment and expected junction count for a named scenario."""
    key = _canonical_name(name)
    entry = SCENARIO_LIBRARY[key]

    if "end_wall_m" in entry:
        walls = _dead_end_walls(entry["end_wall_m"], CORRIDOR_WIDTH, BRANCH_LENGTH)
    else:
        walls = _branch_walls(entry["branches_deg"], CORRIDOR_WIDTH, BRANCH_LENGTH)

    return Environment(walls=tuple(walls), name=key), int(entry["expected"])


def list_scenarios() -> List[ScenarioSummary]:
    return [
        ScenarioSummary(name=name, label=entry["label"], expected_junctions=int(entry["expected"]))
        for name, entry in SCENARIO_LIBRARY.items()
    ]


__all__ = [
    "CORRIDOR_WIDTH",
    "BRANCH_LENGTH",
    "SCENARIO_LIBRARY",
    "ScenarioSummary",
    "builtin_scenario",
    "list_scenarios",
]
