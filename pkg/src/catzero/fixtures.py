"""Small named posets used across tests, docs and the CLI examples."""

from __future__ import annotations

from .pip import Pip


def square() -> Pip:
    """Two incomparable elements; the complex is a single unit square."""
    return Pip(["1", "2"])


def book() -> Pip:
    """Three elements, {1,3} inconsistent; two squares sharing an edge."""
    return Pip(["1", "2", "3"], inconsistent=[("1", "3")])


def grid22() -> Pip:
    """Two 2-chains; the complex is a 2x2 square grid."""
    return Pip(["1", "2", "3", "4"], covers=[("1", "3"), ("2", "4")])


def grid32() -> Pip:
    """A 3-chain and a 2-chain; the complex is a 3x2 rectangle."""
    return Pip(["1", "2", "3", "4", "5"], covers=[("1", "2"), ("2", "3"), ("4", "5")])


def s8() -> Pip:
    """Five elements whose geodesic breakpoints have algebraic degree eight."""
    return Pip(
        ["1", "2", "3", "4", "5"],
        covers=[("1", "3"), ("1", "4"), ("2", "5"), ("3", "5")],
    )


def bent() -> Pip:
    """Ascending-antichain poset whose middle cell is skipped by geodesics."""
    return Pip(
        ["1", "2", "3", "4", "5", "6"],
        covers=[("1", "2"), ("2", "4"), ("2", "5"), ("3", "5"), ("5", "6")],
    )


def ex4() -> Pip:
    """Two chains 1<2<3<4 and 5<6<7; a staircase of squares."""
    return Pip(
        ["1", "2", "3", "4", "5", "6", "7"],
        covers=[("1", "2"), ("2", "3"), ("3", "4"), ("5", "6"), ("6", "7")],
    )


FIXTURES = {
    "sq": square,
    "book": book,
    "grid22": grid22,
    "grid32": grid32,
    "s8": s8,
    "bent": bent,
    "ex4": ex4,
}


def load_fixture(name: str) -> Pip:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None
