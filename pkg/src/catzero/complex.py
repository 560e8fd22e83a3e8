"""Cubes, points and the standard embedding of a PIP complex.

The complex of a PIP has one cube ``C(I, M)`` per consistent order ideal
``I`` and subset ``M`` of its maximal elements.  Points live inside the
unit hypercube indexed by the poset elements: a coordinate may only be
positive once everything below it is pinned at 1, and inconsistent
coordinates can never be positive simultaneously.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InvalidPoint, UnknownElement
from .pip import (
    Antichain,
    OrderIdeal,
    Pip,
    _bits,
    enumerate_consistent_ideals,
    maximal_elements,
)

TAU_EMB = 1e-9


@dataclass(frozen=True)
class Cube:
    """Cell ``C(I, M)``: ideal ``I`` with free directions ``M``."""

    pip: Pip
    ideal: frozenset[str]
    free: frozenset[str]

    def __post_init__(self) -> None:
        oi = OrderIdeal(self.pip, self.ideal)
        if not oi.is_down_closed:
            raise ValueError("cube ideal is not down-closed")
        if not oi.is_consistent:
            raise ValueError("cube ideal contains an inconsistent pair")
        if not self.free <= maximal_elements(oi).members:
            raise ValueError("free set is not a subset of the ideal's maximal elements")

    @property
    def dimension(self) -> int:
        return len(self.free)

    def contains(self, point: "Point", tau: float = TAU_EMB) -> bool:
        for e in self.pip.elements:
            value = point.get(e)
            if e in self.free:
                if not -tau <= value <= 1 + tau:
                    return False
            elif e in self.ideal:
                if abs(value - 1) > tau:
                    return False
            elif abs(value) > tau:
                return False
        return True

    def __repr__(self) -> str:
        return f"C({sorted(self.ideal)}, {sorted(self.free)})"


class Point:
    """Coordinate assignment ``element -> [0, 1]``; absent keys mean 0."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[str, float]):
        self.coords = {k: float(v) for k, v in coords.items()}

    def get(self, element: str, default: float = 0.0) -> float:
        return self.coords.get(element, default)

    def __getitem__(self, element: str) -> float:
        return self.coords.get(element, 0.0)

    def support(self, tau: float = TAU_EMB) -> frozenset[str]:
        return frozenset(k for k, v in self.coords.items() if v > tau)

    def to_vector(self, elements: Iterable[str]) -> list[float]:
        return [self.coords.get(e, 0.0) for e in elements]

    @classmethod
    def from_vector(cls, elements: Iterable[str], values: Iterable[float]) -> "Point":
        return cls({e: float(v) for e, v in zip(elements, values) if v != 0.0})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        keys = set(self.coords) | set(other.coords)
        return all(self.get(k) == other.get(k) for k in keys)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v:g}" for k, v in sorted(self.coords.items()))
        return f"Point({{{inner}}})"


def _snap(value: float, tau: float) -> float:
    if abs(value) <= tau:
        return 0.0
    if abs(value - 1) <= tau:
        return 1.0
    return value


def is_valid_point(pip: Pip, point: Point | Mapping[str, float], tau: float = TAU_EMB) -> bool:
    """Check the standard-embedding constraints within tolerance ``tau``."""
    if not isinstance(point, Point):
        point = Point(point)
    for key in point.coords:
        if key not in pip:
            raise UnknownElement(key)
    n = len(pip.elements)
    snapped = [_snap(point.get(e), tau) for e in pip.elements]
    for i in range(n):
        if not 0.0 <= snapped[i] <= 1.0:
            return False
    for i in range(n):
        if snapped[i] <= 0.0:
            continue
        # everything strictly below a positive coordinate must sit at 1
        for j in _bits(pip.down_mask(i) & ~(1 << i)):
            if snapped[j] < 1.0:
                return False
        if pip.inc_mask(i) and any(snapped[j] > 0.0 for j in _bits(pip.inc_mask(i))):
            return False
    return True


def cube_vertices(cube: Cube) -> list[OrderIdeal]:
    """The ``2^|M|`` vertices of a cube, as order ideals."""
    free = sorted(cube.free)
    out = []
    for r in range(len(free) + 1):
        for removed in itertools.combinations(free, r):
            out.append(OrderIdeal(cube.pip, cube.ideal - set(removed)))
    out.sort(key=lambda oi: (len(oi.members), tuple(sorted(oi.members))))
    return out


def cube_faces(cube: Cube) -> list[Cube]:
    """All ``3^|M|`` faces obtained by pinning free directions at 0 or 1."""
    free = sorted(cube.free)
    out = []
    for assignment in itertools.product((0, 1, 2), repeat=len(free)):
        drop = {e for e, a in zip(free, assignment) if a == 0}   # pinned at 0
        pin = {e for e, a in zip(free, assignment) if a == 1}    # pinned at 1
        out.append(Cube(cube.pip, cube.ideal - drop, cube.free - drop - pin))
    out.sort(key=lambda c: (tuple(sorted(c.ideal)), tuple(sorted(c.free))))
    return out


def minimal_cube_containing(pip: Pip, point: Point | Mapping[str, float], tau: float = TAU_EMB) -> Cube:
    """Smallest cube whose closure contains the point."""
    if not isinstance(point, Point):
        point = Point(point)
    if not is_valid_point(pip, point, tau):
        raise InvalidPoint(f"point violates the embedding constraints: {point!r}")
    free = frozenset(
        e for e in pip.elements if tau < point.get(e) < 1 - tau
    )
    ones = frozenset(e for e in pip.elements if point.get(e) >= 1 - tau)
    return Cube(pip, ones | free, free)


def max_cube_dimension(pip: Pip, limit: int = 20) -> int:
    """Dimension of the largest cube, i.e. the largest consistent antichain."""
    best = 0
    for ideal in enumerate_consistent_ideals(pip, limit):
        best = max(best, len(maximal_elements(ideal).members))
    return best


def all_cubes(pip: Pip, limit: int = 20) -> list[Cube]:
    """Every cube of the complex (enumeration-guarded)."""
    out = []
    for ideal in enumerate_consistent_ideals(pip, limit):
        maxes = sorted(maximal_elements(ideal).members)
        for r in range(len(maxes) + 1):
            for free in itertools.combinations(maxes, r):
                out.append(Cube(pip, ideal.members, frozenset(free)))
    return out


def euler_characteristic(pip: Pip, limit: int = 20) -> int:
    return sum((-1) ** c.dimension for c in all_cubes(pip, limit))
