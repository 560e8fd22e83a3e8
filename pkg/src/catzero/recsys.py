"""Reconfigurable systems and the realization of PIP complexes as state complexes.

A reconfigurable system is a graph with labelled vertices and a set of
involutive local moves; its state complex has the reachable labelings as
vertices and one cube for every state together with a set of pairwise
commuting moves admissible there.  Every finite PIP complex arises this
way: one binary move per poset element, spreading 1-labels upward along
covers while inconsistent neighbours block each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import TooLarge
from .pip import Pip, enumerate_consistent_ideals

Labeling = frozenset[tuple[str, str]]


def _labeling(assignment: dict[str, str]) -> Labeling:
    return frozenset(assignment.items())


@dataclass(frozen=True)
class Move:
    """Involutive relabeling of a trace, guarded by a context labeling."""

    name: str
    support: frozenset[str]
    trace: frozenset[str]
    context: Labeling          # on support - trace
    swap_a: Labeling           # on trace
    swap_b: Labeling

    def __post_init__(self) -> None:
        if not self.trace <= self.support:
            raise ValueError("trace must be contained in the support")
        context_vertices = {v for v, _ in self.context}
        if context_vertices != self.support - self.trace:
            raise ValueError("context must label exactly support - trace")

    def is_admissible(self, state: Labeling) -> bool:
        if not self.context <= state:
            return False
        return self.swap_a <= state or self.swap_b <= state

    def apply(self, state: Labeling) -> Labeling:
        if not self.is_admissible(state):
            raise ValueError(f"move {self.name} is not admissible here")
        if self.swap_a <= state:
            return (state - self.swap_a) | self.swap_b
        return (state - self.swap_b) | self.swap_a


def moves_commute(first: Move, second: Move) -> bool:
    """Moves commute when neither trace meets the other's support."""
    return not (first.trace & second.support) and not (second.trace & first.support)


@dataclass(frozen=True)
class ReconfigurableSystem:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    alphabet: tuple[str, ...]
    moves: tuple[Move, ...]
    states: frozenset[Labeling]


@dataclass(frozen=True)
class StateComplex:
    states: tuple[Labeling, ...]
    cubes: tuple[frozenset[Labeling], ...]   # ordered by (dimension, canonical key)

    def count_by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for cube in self.cubes:
            d = len(cube).bit_length() - 1
            out[d] = out.get(d, 0) + 1
        return out


def pip_to_reconfigurable(pip: Pip, limit: int = 20) -> ReconfigurableSystem:
    """Realize the complex of a PIP as a reconfigurable system.

    The graph is the Hasse diagram extended with one edge per minimal
    inconsistent pair.  Move ``p`` toggles the label of ``p`` and is
    admissible when everything covered by ``p`` carries a 1 and every
    minimal element inconsistent with ``p`` carries a 0.  States are the
    consistent order ideals written as indicator labelings.
    """
    edges = {tuple(sorted(c)) for c in pip.covers}
    for pair in pip.minimal_inconsistent_pairs():
        edges.add(tuple(sorted(pair)))

    moves = []
    for p in pip.elements:
        lower = pip.lower_covers(p)
        blockers = pip.minimal_inconsistent_partners(p)
        context = {e: "1" for e in lower}
        context.update({e: "0" for e in blockers})
        moves.append(
            Move(
                name=p,
                support=frozenset({p}) | lower | blockers,
                trace=frozenset({p}),
                context=_labeling(context),
                swap_a=_labeling({p: "0"}),
                swap_b=_labeling({p: "1"}),
            )
        )

    states = []
    for ideal in enumerate_consistent_ideals(pip, limit):
        assignment = {e: ("1" if e in ideal.members else "0") for e in pip.elements}
        states.append(_labeling(assignment))

    return ReconfigurableSystem(
        vertices=pip.elements,
        edges=frozenset(edges),
        alphabet=("0", "1"),
        moves=tuple(moves),
        states=frozenset(states),
    )


def state_complex(system: ReconfigurableSystem, guard: int = 100_000) -> StateComplex:
    """Vertices are states; cubes come from pairwise commuting admissible moves."""
    if len(system.states) > guard:
        raise TooLarge(f"state set exceeds the guard {guard}")

    commute: dict[tuple[str, str], bool] = {}
    for m1, m2 in itertools.combinations(system.moves, 2):
        commute[(m1.name, m2.name)] = commute[(m2.name, m1.name)] = moves_commute(m1, m2)

    def key(state: Labeling) -> tuple:
        return tuple(sorted(state))

    cubes: set[frozenset[Labeling]] = set()
    for state in system.states:
        admissible = [m for m in system.moves if m.is_admissible(state)]
        admissible.sort(key=lambda m: m.name)
        for r in range(len(admissible) + 1):
            for subset in itertools.combinations(admissible, r):
                if any(
                    not commute[(a.name, b.name)]
                    for a, b in itertools.combinations(subset, 2)
                ):
                    continue
                corners = {state}
                for move in subset:
                    corners |= {move.apply(s) for s in corners}
                if not corners <= system.states:
                    continue
                cubes.add(frozenset(corners))

    ordered_states = tuple(sorted(system.states, key=key))
    ordered_cubes = tuple(
        sorted(cubes, key=lambda c: (len(c), tuple(sorted(key(s) for s in c))))
    )
    return StateComplex(states=ordered_states, cubes=ordered_cubes)
