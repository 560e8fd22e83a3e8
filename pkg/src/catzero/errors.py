"""Exception types shared across the library."""

from __future__ import annotations


class CatzeroError(Exception):
    """Base class for all library-specific failures."""


class PipValidationError(CatzeroError):
    """A raw poset-with-inconsistent-pairs description violates an axiom."""


class CycleDetected(PipValidationError):
    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__(f"cover relation contains a cycle: {' < '.join(cycle)} < {cycle[0]}")


class ComparableInconsistentPair(PipValidationError):
    def __init__(self, p: str, q: str):
        self.pair = (p, q)
        super().__init__(f"inconsistent pair {{{p}, {q}}} is not incomparable")


class CommonUpperBound(PipValidationError):
    def __init__(self, p: str, q: str, witness: str):
        self.pair = (p, q)
        self.witness = witness
        super().__init__(
            f"inconsistent pair {{{p}, {q}}} has a common upper bound {witness!r}"
        )


class UnknownElement(CatzeroError):
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"unknown element {element!r}")


class TooLarge(CatzeroError):
    """An enumeration guard was exceeded."""


class HasInconsistentPairs(CatzeroError):
    """Operation requires a poset without inconsistent pairs."""


class NotAcyclic(CatzeroError):
    def __init__(self, positive: str, negative: str):
        self.witness = (positive, negative)
        super().__init__(
            f"halfspace system is not acyclic: {positive}+ < {negative}-"
        )


class InconsistentVertex(CatzeroError):
    """Rerooting was attempted at a set that is not a consistent order ideal."""


class InvalidPoint(CatzeroError):
    """Coordinates do not satisfy the standard-embedding constraints."""


class DegenerateLeg(CatzeroError):
    """All legs of a polygonal path collapsed below tolerance."""
