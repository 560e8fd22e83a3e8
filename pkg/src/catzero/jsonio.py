"""Canonical JSON formats for posets, points, cubes, systems and paths.

Serialization is canonical: elements sorted, pairs sorted, inconsistency
written as its minimal pairs.  Every document emitted here re-parses to
an equal value.
"""

from __future__ import annotations

import json
from pathlib import Path as FilePath
from typing import Any

from .complex import Cube, Point
from .geodesic import GeodesicPath
from .halfspace import HalfspaceSystem, literal_name, parse_literal
from .pip import Pip


def pip_to_json(pip: Pip) -> dict[str, Any]:
    return {
        "elements": list(pip.elements),
        "covers": sorted([a, b] for a, b in pip.covers),
        "inconsistent": sorted(sorted(p) for p in pip.minimal_inconsistent_pairs()),
    }


def pip_from_json(data: dict[str, Any]) -> Pip:
    return Pip(
        data.get("elements", []),
        [tuple(pair) for pair in data.get("covers", [])],
        [tuple(pair) for pair in data.get("inconsistent", [])],
    )


def point_to_json(point: Point) -> dict[str, Any]:
    return {"coords": {k: v for k, v in sorted(point.coords.items()) if v != 0.0}}


def point_from_json(data: dict[str, Any]) -> Point:
    return Point(data.get("coords", {}))


def cube_to_json(cube: Cube) -> dict[str, Any]:
    return {"ideal": sorted(cube.ideal), "free": sorted(cube.free)}


def cube_from_json(pip: Pip, data: dict[str, Any]) -> Cube:
    return Cube(pip, frozenset(data.get("ideal", [])), frozenset(data.get("free", [])))


def halfspace_to_json(system: HalfspaceSystem) -> dict[str, Any]:
    return {
        "hyperplanes": list(system.hyperplanes),
        "relations": sorted(
            [literal_name(a), literal_name(b)] for a, b in system.relations
        ),
    }


def halfspace_from_json(data: dict[str, Any]) -> HalfspaceSystem:
    return HalfspaceSystem(
        data.get("hyperplanes", []),
        [
            (parse_literal(a), parse_literal(b))
            for a, b in data.get("relations", [])
        ],
    )


def path_to_json(path: GeodesicPath) -> dict[str, Any]:
    cubes = []
    if path.frame is not None:
        for cube in path.carrier.cubes:
            cubes.append(cube_to_json(path.frame.cube_to_global(cube.ideal, cube.free)))
    else:
        cubes = [cube_to_json(c) for c in path.carrier.cubes]
    return {
        "length": path.length,
        "breakpoints": [point_to_json(p) for p in path.breakpoints],
        "cubes": cubes,
        "certified": path.certified,
        "zero_tension_residual": path.zero_tension_residual,
        "iterations": path.iterations,
        "status": path.status,
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def dump_file(data: Any, path: str | FilePath) -> None:
    FilePath(path).write_text(dumps(data), encoding="utf-8")


def load_file(path: str | FilePath) -> Any:
    return json.loads(FilePath(path).read_text(encoding="utf-8"))
