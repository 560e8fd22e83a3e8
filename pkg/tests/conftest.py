from __future__ import annotations

import itertools
import random

import pytest

from catzero import Pip, enumerate_consistent_ideals, maximal_elements
from catzero.complex import Point
from catzero.fixtures import FIXTURES, load_fixture


def random_pip(
    rng: random.Random,
    max_elements: int = 7,
    cover_p: float = 0.3,
    inconsistent_p: float = 0.25,
) -> Pip:
    """Random PIP: sparse covers on a shuffled order, then random consistent
    inconsistencies among incomparable pairs without common upper bounds."""
    n = rng.randint(1, max_elements)
    names = [str(i + 1) for i in range(n)]
    order = names[:]
    rng.shuffle(order)
    covers = [
        (order[i], order[j])
        for i, j in itertools.combinations(range(n), 2)
        if rng.random() < cover_p
    ]
    base = Pip(names, covers)
    inconsistent = []
    chosen = Pip(names, covers)  # rebuilt as pairs are accepted
    for a, b in itertools.combinations(sorted(names), 2):
        if chosen.comparable(a, b) or chosen.is_inconsistent(a, b):
            continue
        up_a = chosen.names_of(chosen.up_mask(chosen.index_of(a)))
        up_b = chosen.names_of(chosen.up_mask(chosen.index_of(b)))
        if up_a & up_b:
            continue
        if rng.random() < inconsistent_p:
            inconsistent.append((a, b))
            chosen = Pip(names, covers, inconsistent)
    return chosen


def random_point(rng: random.Random, pip: Pip) -> Point:
    """Uniformly pick a cube, then uniform fractional coordinates on it."""
    ideals = enumerate_consistent_ideals(pip)
    ideal = rng.choice(ideals)
    maxes = sorted(maximal_elements(ideal).members)
    free = [e for e in maxes if rng.random() < 0.7]
    coords = {e: 1.0 for e in ideal.members if e not in free}
    coords.update({e: rng.uniform(0.05, 0.95) for e in free})
    return Point(coords)


@pytest.fixture
def make_random_pip():
    return random_pip


@pytest.fixture
def make_random_point():
    return random_point


def _fixture_factory(name):
    @pytest.fixture(name=f"fix_{name}")
    def fix():
        return load_fixture(name)

    return fix


for _name in FIXTURES:
    globals()[f"fix_{_name}"] = _fixture_factory(_name)
