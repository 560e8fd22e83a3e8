"""Finite posets with inconsistent pairs and their basic order theory.

A poset with inconsistent pairs (PIP) is a finite strict partial order
together with a symmetric relation of "inconsistent" pairs that is
upward closed and never admits a common upper bound.  Consistent order
ideals of a PIP are the vertices of a CAT(0) cube complex; almost every
other module in this package is built on top of the queries defined
here.

Elements are opaque strings.  All derived data (transitive closure,
upward-closed inconsistency, transitive reduction) is materialized at
construction time, so comparability and inconsistency queries are O(1)
bit operations afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    CommonUpperBound,
    ComparableInconsistentPair,
    CycleDetected,
    HasInconsistentPairs,
    TooLarge,
    UnknownElement,
)

IDEAL_ENUMERATION_GUARD = 20


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Pip:
    """Validated poset with inconsistent pairs.

    Construction runs the full axiom check and raises a
    :class:`~catzero.errors.PipValidationError` subclass on violation:

    * ``CycleDetected`` when the cover pairs are not acyclic,
    * ``ComparableInconsistentPair`` when an inconsistent pair is comparable,
    * ``CommonUpperBound`` when an inconsistent pair has a common upper bound.

    The stored inconsistency relation is the full upward closure of the
    input pairs; minimal pairs are derived on demand.
    """

    __slots__ = (
        "elements",
        "covers",
        "_index",
        "_up",
        "_down",
        "_inc",
        "_hash",
        "__dict__",
    )

    def __init__(
        self,
        elements: Iterable[str],
        covers: Iterable[tuple[str, str]] = (),
        inconsistent: Iterable[tuple[str, str]] = (),
    ):
        names = tuple(sorted(elements))
        if len(set(names)) != len(names):
            raise ValueError("element identifiers must be distinct")
        self.elements = names
        self._index = {e: i for i, e in enumerate(names)}
        n = len(names)

        adj = [0] * n
        for a, b in covers:
            ia, ib = self._require(a), self._require(b)
            if ia == ib:
                raise CycleDetected((a,))
            adj[ia] |= 1 << ib

        self._up = self._close_upward(adj)
        self._down = [0] * n
        for i in range(n):
            for j in _bits(self._up[i]):
                self._down[j] |= 1 << i

        inc = [0] * n
        for p, q in inconsistent:
            ip, iq = self._require(p), self._require(q)
            if ip == iq or self.leq(p, q) or self.leq(q, p):
                raise ComparableInconsistentPair(p, q)
            common = self._up[ip] & self._up[iq]
            if common:
                witness = names[min(_bits(common))]
                raise CommonUpperBound(p, q, witness)
            for a in _bits(self._up[ip]):
                inc[a] |= self._up[iq]
            for b in _bits(self._up[iq]):
                inc[b] |= self._up[ip]
        self._inc = inc

        self.covers = self._reduction()
        self._hash = hash((names, self.covers, tuple(inc)))

    # -- construction helpers -------------------------------------------------

    def _require(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(element) from None

    def _close_upward(self, adj: list[int]) -> list[int]:
        n = len(adj)
        up = [0] * n
        state = [0] * n  # 0 unvisited, 1 on stack, 2 done
        path: list[int] = []

        def visit(i: int) -> None:
            state[i] = 1
            path.append(i)
            mask = 1 << i
            for j in _bits(adj[i]):
                if state[j] == 1:
                    cycle = path[path.index(j):]
                    raise CycleDetected(tuple(self.elements[k] for k in cycle))
                if state[j] == 0:
                    visit(j)
                mask |= up[j]
            up[i] = mask
            state[i] = 2
            path.pop()

        for i in range(n):
            if state[i] == 0:
                visit(i)
        return up

    def _reduction(self) -> frozenset[tuple[str, str]]:
        pairs = []
        for i, e in enumerate(self.elements):
            strict = self._up[i] & ~(1 << i)
            via = 0
            for j in _bits(strict):
                via |= self._up[j] & ~(1 << j)
            for j in _bits(strict & ~via):
                pairs.append((e, self.elements[j]))
        return frozenset(pairs)

    # -- mask plumbing (used throughout the package) ---------------------------

    def index_of(self, element: str) -> int:
        return self._require(element)

    def mask_of(self, elements: Iterable[str]) -> int:
        mask = 0
        for e in elements:
            mask |= 1 << self._require(e)
        return mask

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in _bits(mask))

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def inc_mask(self, i: int) -> int:
        return self._inc[i]

    # -- queries ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element: str) -> bool:
        return element in self._index

    def leq(self, a: str, b: str) -> bool:
        return bool(self._up[self._require(a)] & (1 << self._require(b)))

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def is_inconsistent(self, a: str, b: str) -> bool:
        return bool(self._inc[self._require(a)] & (1 << self._require(b)))

    def lower_covers(self, element: str) -> frozenset[str]:
        return frozenset(a for a, b in self.covers if b == element)

    def upper_covers(self, element: str) -> frozenset[str]:
        return frozenset(b for a, b in self.covers if a == element)

    def minimal_elements(self) -> frozenset[str]:
        return frozenset(
            e for i, e in enumerate(self.elements) if self._down[i] == 1 << i
        )

    def maximal_elements_of_poset(self) -> frozenset[str]:
        return frozenset(
            e for i, e in enumerate(self.elements) if self._up[i] == 1 << i
        )

    def inconsistent_partners(self, element: str) -> frozenset[str]:
        return self.names_of(self._inc[self._require(element)])

    def minimal_inconsistent_partners(self, element: str) -> frozenset[str]:
        """Minimal elements among those inconsistent with ``element``."""
        partners = self._inc[self._require(element)]
        out = []
        for q in _bits(partners):
            below = self._down[q] & ~(1 << q)
            if not (below & partners):
                out.append(self.elements[q])
        return frozenset(out)

    def minimal_inconsistent_pairs(self) -> frozenset[frozenset[str]]:
        pairs = set()
        for p in range(len(self.elements)):
            for q in _bits(self._inc[p]):
                if q < p:
                    continue
                if self._dominated(p, q):
                    continue
                pairs.add(frozenset((self.elements[p], self.elements[q])))
        return frozenset(pairs)

    def _dominated(self, p: int, q: int) -> bool:
        # True when some other inconsistent pair sits componentwise below {p, q}.
        for a in _bits(self._down[p]):
            lower_qs = self._inc[a] & self._down[q]
            if a == p:
                lower_qs &= ~(1 << q)
            if lower_qs:
                return True
        return False

    def has_inconsistency(self) -> bool:
        return any(self._inc)

    def restrict(self, members: Iterable[str]) -> "Pip":
        """Induced sub-PIP on a downward-closed subset of elements."""
        keep = set(members)
        for e in keep:
            self._require(e)
        covers = [(a, b) for a, b in self.covers if a in keep and b in keep]
        inc = [
            tuple(sorted(pair))
            for pair in self.minimal_inconsistent_pairs()
            if pair <= keep
        ]
        return Pip(keep, covers, inc)

    # -- value semantics ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pip):
            return NotImplemented
        return (
            self.elements == other.elements
            and self._up == other._up
            and self._inc == other._inc
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return (
            f"Pip({len(self.elements)} elements, {len(self.covers)} covers, "
            f"{len(self.minimal_inconsistent_pairs())} minimal inconsistent pairs)"
        )


def validate_pip(
    elements: Iterable[str],
    covers: Iterable[tuple[str, str]] = (),
    inconsistent: Iterable[tuple[str, str]] = (),
) -> Pip:
    """Validate a raw description and return the materialized PIP."""
    return Pip(elements, covers, inconsistent)


@dataclass(frozen=True)
class OrderIdeal:
    """A down-closed subset of a PIP."""

    pip: Pip
    members: frozenset[str]

    @cached_property
    def is_consistent(self) -> bool:
        mask = self.pip.mask_of(self.members)
        return not any(self.pip.inc_mask(i) & mask for i in _bits(mask))

    @cached_property
    def is_down_closed(self) -> bool:
        mask = self.pip.mask_of(self.members)
        return all(self.pip.down_mask(i) & ~mask == 0 for i in _bits(mask))

    def maximal_elements(self) -> "Antichain":
        return maximal_elements(self)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))

    def __contains__(self, element: str) -> bool:
        return element in self.members


@dataclass(frozen=True)
class Antichain:
    """A set of pairwise incomparable elements of a PIP."""

    pip: Pip
    members: frozenset[str]

    def __post_init__(self) -> None:
        items = sorted(self.members)
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                if self.pip.comparable(a, b):
                    raise ValueError(f"{a!r} and {b!r} are comparable")

    @cached_property
    def is_consistent(self) -> bool:
        mask = self.pip.mask_of(self.members)
        return not any(self.pip.inc_mask(i) & mask for i in _bits(mask))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))


def downset(pip: Pip, elements: Iterable[str]) -> OrderIdeal:
    """Smallest order ideal containing the given elements."""
    mask = 0
    for e in elements:
        mask |= pip.down_mask(pip.index_of(e))
    return OrderIdeal(pip, pip.names_of(mask))


def maximal_elements(ideal: OrderIdeal) -> Antichain:
    """Maximal elements of an order ideal; together they regenerate it."""
    pip = ideal.pip
    mask = pip.mask_of(ideal.members)
    out = [
        pip.elements[i]
        for i in _bits(mask)
        if not (pip.up_mask(i) & ~(1 << i) & mask)
    ]
    return Antichain(pip, frozenset(out))


def is_maximal_antichain(pip: Pip, antichain: Antichain | Iterable[str]) -> bool:
    """True when every element of the poset is comparable to the antichain."""
    members = antichain.members if isinstance(antichain, Antichain) else frozenset(antichain)
    if not isinstance(antichain, Antichain):
        Antichain(pip, members)  # raises if not an antichain
    touched = 0
    for e in members:
        i = pip.index_of(e)
        touched |= pip.up_mask(i) | pip.down_mask(i)
    return touched == (1 << len(pip.elements)) - 1


def iter_consistent_ideal_masks(pip: Pip) -> Iterator[int]:
    """Yield every consistent order ideal as a bitmask, each exactly once."""
    n = len(pip.elements)
    topo = sorted(range(n), key=lambda i: (bin(pip.down_mask(i)).count("1"), i))

    def rec(k: int, mask: int, forbidden: int) -> Iterator[int]:
        if k == n:
            yield mask
            return
        e = topo[k]
        yield from rec(k + 1, mask, forbidden | pip.up_mask(e))
        if not (forbidden >> e) & 1 and not (pip.inc_mask(e) & mask):
            yield from rec(k + 1, mask | (1 << e), forbidden)

    yield from rec(0, 0, 0)


def enumerate_consistent_ideals(
    pip: Pip, limit: int = IDEAL_ENUMERATION_GUARD
) -> list[OrderIdeal]:
    """All consistent order ideals, sorted so the order refines inclusion."""
    if len(pip.elements) > limit:
        raise TooLarge(
            f"poset has {len(pip.elements)} elements, enumeration guard is {limit}"
        )
    masks = sorted(
        iter_consistent_ideal_masks(pip),
        key=lambda m: (bin(m).count("1"), tuple(sorted(pip.names_of(m)))),
    )
    return [OrderIdeal(pip, pip.names_of(m)) for m in masks]


def count_consistent_ideals(pip: Pip, limit: int = IDEAL_ENUMERATION_GUARD) -> int:
    if len(pip.elements) > limit:
        raise TooLarge(
            f"poset has {len(pip.elements)} elements, enumeration guard is {limit}"
        )
    return sum(1 for _ in iter_consistent_ideal_masks(pip))


def chain_decomposition(pip: Pip) -> list[list[str]]:
    """Partition an inconsistency-free poset into width-many chains.

    Uses maximum bipartite matching on the strict comparability graph; the
    number of chains returned equals the size of a largest antichain.
    """
    if pip.has_inconsistency():
        raise HasInconsistentPairs("chain decomposition requires no inconsistent pairs")
    n = len(pip.elements)
    succ = {
        i: [j for j in _bits(pip.up_mask(i) & ~(1 << i))] for i in range(n)
    }
    match_right: dict[int, int] = {}
    match_left: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in succ[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_right or augment(match_right[j], seen):
                match_right[j] = i
                match_left[i] = j
                return True
        return False

    for i in range(n):
        augment(i, set())

    chains: list[list[str]] = []
    starts = [i for i in range(n) if i not in match_right]
    for start in sorted(starts, key=lambda i: pip.elements[i]):
        chain = [start]
        while chain[-1] in match_left:
            chain.append(match_left[chain[-1]])
        chains.append([pip.elements[i] for i in chain])
    chains.sort(key=lambda c: c[0])
    return chains


def width_by_enumeration(pip: Pip) -> int:
    """Size of a largest antichain, found by exhaustive search (small posets)."""
    n = len(pip.elements)
    best = 0

    def rec(i: int, chosen_mask: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (n - i) <= best:
            return
        for j in range(i, n):
            cmp_mask = (pip.up_mask(j) | pip.down_mask(j)) & ~(1 << j)
            if not (cmp_mask & chosen_mask):
                rec(j + 1, chosen_mask | (1 << j), size + 1)

    rec(0, 0, 0)
    return best
