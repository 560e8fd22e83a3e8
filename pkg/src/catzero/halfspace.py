"""Halfspace systems and rerooting of PIP complexes.

A halfspace system records, for every hyperplane of a cube complex, a
positive and a negative side together with a containment order on all
the signed sides.  A system is *acyclic* when no positive side sits
below a negative one; acyclic systems are exactly the ones obtained by
rooting the complex at the all-positive vertex, and they are in
bijection with PIPs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InconsistentVertex, NotAcyclic, UnknownElement
from .pip import OrderIdeal, Pip

Literal = tuple[str, int]  # (hyperplane id, +1 or -1)


def literal_name(lit: Literal) -> str:
    return f"{lit[0]}{'+' if lit[1] > 0 else '-'}"


def parse_literal(text: str) -> Literal:
    if len(text) < 2 or text[-1] not in "+-":
        raise ValueError(f"malformed halfspace literal {text!r}")
    return (text[:-1], 1 if text[-1] == "+" else -1)


def _involution(lit: Literal) -> Literal:
    return (lit[0], -lit[1])


class HalfspaceSystem:
    """Signed-halfspace order with a built-in order-reversing involution.

    The relation set handed to the constructor is closed under the
    involution and transitivity, then checked against the axioms:
    ``h+`` and ``h-`` are incomparable for every hyperplane, and two
    distinct hyperplanes satisfy at most one of the four possible
    inequalities between their sides.
    """

    def __init__(self, hyperplanes: Iterable[str], relations: Iterable[tuple[Literal, Literal]]):
        self.hyperplanes = tuple(sorted(hyperplanes))
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("hyperplane identifiers must be distinct")
        known = set(self.hyperplanes)

        adj: dict[Literal, set[Literal]] = {}
        for a, b in relations:
            for lit in (a, b):
                if lit[0] not in known:
                    raise UnknownElement(lit[0])
            if a == b:
                raise ValueError(f"literal {literal_name(a)} compared with itself")
            adj.setdefault(a, set()).add(b)
            adj.setdefault(_involution(b), set()).add(_involution(a))

        # transitive closure by DFS from each of the at most 2n literals
        rel: set[tuple[Literal, Literal]] = set()
        for start in list(adj):
            stack = list(adj[start])
            seen: set[Literal] = set()
            while stack:
                lit = stack.pop()
                if lit in seen:
                    continue
                seen.add(lit)
                rel.add((start, lit))
                stack.extend(adj.get(lit, ()))

        for a, b in rel:
            if a == b or (b, a) in rel:
                raise ValueError(
                    f"relation between {literal_name(a)} and {literal_name(b)} is cyclic"
                )
            if a[0] == b[0]:
                raise ValueError(
                    f"sides of hyperplane {a[0]!r} must be incomparable"
                )
        # relations come in involution pairs, so fixing h on the left counts
        # each of the four possible inequalities between h and k exactly once
        for h, k in itertools.combinations(self.hyperplanes, 2):
            count = sum(
                ((h, s), (k, t)) in rel for s in (1, -1) for t in (1, -1)
            )
            if count > 1:
                raise ValueError(
                    f"hyperplanes {h!r} and {k!r} satisfy {count} inequalities; at most one allowed"
                )
        self.relations = frozenset(rel)

    def less(self, a: Literal, b: Literal) -> bool:
        return (a, b) in self.relations

    def is_acyclic(self) -> tuple[str, str] | None:
        """Return a witness ``(a, b)`` with ``a+ < b-`` or None when acyclic."""
        for (a, b) in sorted(self.relations):
            if a[1] > 0 and b[1] < 0:
                return (a[0], b[0])
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HalfspaceSystem):
            return NotImplemented
        return self.hyperplanes == other.hyperplanes and self.relations == other.relations

    def __repr__(self) -> str:
        return f"HalfspaceSystem({len(self.hyperplanes)} hyperplanes, {len(self.relations)} relations)"


def pip_to_halfspace(pip: Pip) -> HalfspaceSystem:
    """Split every element into a positive and a negative side.

    Order relations become nested sides, inconsistent pairs become the
    crossed relations ``a- < b+`` and ``b- < a+``; everything else is
    transversal.
    """
    relations: list[tuple[Literal, Literal]] = []
    for a, b in itertools.permutations(pip.elements, 2):
        if pip.lt(a, b):
            relations.append(((a, 1), (b, 1)))
            relations.append(((b, -1), (a, -1)))
    seen = set()
    for a in pip.elements:
        for b in pip.inconsistent_partners(a):
            if (b, a) in seen:
                continue
            seen.add((a, b))
            relations.append(((a, -1), (b, 1)))
            relations.append(((b, -1), (a, 1)))
    return HalfspaceSystem(pip.elements, relations)


def halfspace_to_pip(system: HalfspaceSystem) -> Pip:
    """Inverse of :func:`pip_to_halfspace` on acyclic systems."""
    witness = system.is_acyclic()
    if witness is not None:
        raise NotAcyclic(*witness)
    lt_pairs = [
        (a[0], b[0])
        for a, b in system.relations
        if a[1] > 0 and b[1] > 0
    ]
    inconsistent = sorted(
        {
            tuple(sorted((a[0], b[0])))
            for a, b in system.relations
            if a[1] < 0 and b[1] > 0
        }
    )
    return Pip(system.hyperplanes, lt_pairs, inconsistent)


@dataclass(frozen=True)
class RerootTransport:
    """Coordinate map between the original frame and a rerooted frame.

    Rerooting flips the orientation of every hyperplane in the new root,
    so the map is the involution ``x_p -> 1 - x_p`` on flipped elements.
    """

    flipped: frozenset[str]

    def point(self, coords: Mapping[str, float], elements: Iterable[str]) -> dict[str, float]:
        out = {}
        for e in elements:
            v = coords.get(e, 0.0)
            if e in self.flipped:
                v = 1.0 - v
            if v != 0.0:
                out[e] = v
        return out

    def ideal(self, members: frozenset[str]) -> frozenset[str]:
        return members ^ self.flipped


@dataclass(frozen=True)
class Rerooted:
    pip: Pip
    transport: RerootTransport


def reroot(pip: Pip, vertex: OrderIdeal | Iterable[str]) -> Rerooted:
    """Move the root of the complex to the given vertex.

    The poset is rebuilt by flipping the sign of every hyperplane in the
    vertex inside the halfspace system.  Cube ``C(I, M)`` of the rerooted
    complex corresponds to ``C((I ^ v) | M, M)`` in the original one, and
    points transport coordinate-wise via the returned map.
    """
    members = vertex.members if isinstance(vertex, OrderIdeal) else frozenset(vertex)
    ideal = OrderIdeal(pip, members)
    if not ideal.is_down_closed or not ideal.is_consistent:
        raise InconsistentVertex(f"{sorted(members)} is not a consistent order ideal")
    system = pip_to_halfspace(pip)
    flip = {
        (h, s): (h, -s) if h in members else (h, s)
        for h in pip.elements
        for s in (1, -1)
    }
    flipped_relations = [(flip[a], flip[b]) for a, b in system.relations]
    new_system = HalfspaceSystem(pip.elements, flipped_relations)
    return Rerooted(halfspace_to_pip(new_system), RerootTransport(frozenset(members)))
