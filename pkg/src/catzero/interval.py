"""Intervals between two points and the integer-lattice embedding.

Given valid points ``x`` and ``y``, the rooting rule picks a vertex ``v``
near ``x`` pointing away from ``y`` and a vertex ``w`` on the far side of
``y``.  Rerooting at ``v`` turns the interval between them into the
complex of an inconsistency-free poset ``Q``; the geodesic between the
two points never leaves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complex import TAU_EMB, Point, is_valid_point, minimal_cube_containing
from .errors import HasInconsistentPairs, InconsistentVertex, InvalidPoint
from .halfspace import RerootTransport, reroot
from .pip import (
    OrderIdeal,
    Pip,
    chain_decomposition,
    enumerate_consistent_ideals,
)


@dataclass(frozen=True)
class IntervalFrame:
    """Interval data for a pair of points, expressed in the frame rooted at ``v``."""

    pip: Pip
    v: frozenset[str]
    w: frozenset[str]
    rerooted: Pip
    q: Pip
    transport: RerootTransport
    x_local: Point
    y_local: Point

    def to_local(self, point: Point | Mapping[str, float]) -> Point:
        coords = point.coords if isinstance(point, Point) else dict(point)
        moved = self.transport.point(coords, self.pip.elements)
        return Point({e: v for e, v in moved.items() if e in self.q})

    def to_global(self, point: Point | Mapping[str, float]) -> Point:
        coords = point.coords if isinstance(point, Point) else dict(point)
        return Point(self.transport.point(coords, self.pip.elements))

    def cube_to_global(self, ideal: frozenset[str], free: frozenset[str]):
        """Translate a cube of the rerooted frame back to the original frame."""
        from .complex import Cube

        return Cube(self.pip, (ideal ^ self.v) | free, free)


def _side(value: float) -> float:
    return 1.0 if value >= 0.5 else 0.0


def interval_endpoints(
    pip: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tau: float = TAU_EMB,
) -> IntervalFrame:
    """Apply the rooting rule and package the interval poset with transports."""
    x = x if isinstance(x, Point) else Point(x)
    y = y if isinstance(y, Point) else Point(y)
    cube_x = minimal_cube_containing(pip, x, tau)
    cube_y = minimal_cube_containing(pip, y, tau)

    v: set[str] = set()
    w: set[str] = set()
    for e in pip.elements:
        xe, ye = x.get(e), y.get(e)
        in_x, in_y = e in cube_x.free, e in cube_y.free
        if not in_x:
            v_side = _side(xe)
        elif not in_y:
            v_side = 1.0 - _side(ye)
        else:
            v_side = 0.0 if xe <= ye else 1.0
        if not in_y:
            w_side = _side(ye)
        elif not in_x:
            w_side = 1.0 - _side(xe)
        else:
            w_side = 1.0 if xe <= ye else 0.0
        if v_side == 1.0:
            v.add(e)
        if w_side == 1.0:
            w.add(e)

    for name, members in (("v", v), ("w", w)):
        ideal = OrderIdeal(pip, frozenset(members))
        if not ideal.is_down_closed or not ideal.is_consistent:
            raise InconsistentVertex(
                f"rooting rule produced a non-vertex {name} = {sorted(members)}"
            )

    rr = reroot(pip, frozenset(v))
    w_local = rr.transport.ideal(frozenset(w))
    q = rr.pip.restrict(w_local)
    if q.has_inconsistency():
        raise InconsistentVertex(
            "interval poset unexpectedly contains inconsistent pairs"
        )

    x_moved = rr.transport.point(x.coords, pip.elements)
    y_moved = rr.transport.point(y.coords, pip.elements)
    for e in pip.elements:
        if e not in w_local and max(x_moved.get(e, 0.0), y_moved.get(e, 0.0)) > 10 * tau:
            raise InvalidPoint(
                f"transported coordinate {e!r} falls outside the interval"
            )
    x_local = Point({e: c for e, c in x_moved.items() if e in q and c > tau})
    y_local = Point({e: c for e, c in y_moved.items() if e in q and c > tau})
    return IntervalFrame(
        pip=pip,
        v=frozenset(v),
        w=frozenset(w),
        rerooted=rr.pip,
        q=q,
        transport=rr.transport,
        x_local=x_local,
        y_local=y_local,
    )


def embed_interval(q: Pip, limit: int = 20) -> dict[frozenset[str], tuple[int, ...]]:
    """Map the ideals of an inconsistency-free poset into the integer lattice.

    Elements are partitioned into width-many chains; an ideal goes to the
    vector of its intersection sizes with each chain.  Cover steps in the
    ideal lattice become unit lattice edges.
    """
    if q.has_inconsistency():
        raise HasInconsistentPairs("interval embedding requires no inconsistent pairs")
    chains = chain_decomposition(q)
    chain_sets = [set(c) for c in chains]
    mapping: dict[frozenset[str], tuple[int, ...]] = {}
    for ideal in enumerate_consistent_ideals(q, limit):
        mapping[ideal.members] = tuple(
            len(ideal.members & cs) for cs in chain_sets
        )
    return mapping
