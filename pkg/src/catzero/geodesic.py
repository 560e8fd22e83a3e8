"""Valid cube sequences, geodesic certification, and the main solver.

A geodesic between two points of a PIP complex is carried by a *valid
cube sequence*: a chain of cubes with strictly increasing ideals whose
free sets are maximal antichains of the interval poset.  The algorithm
starts from the extended normal cube path, repeatedly solves the
fixed-order touring problem through the faces shared by consecutive
cubes, and uses a minimum-weight vertex cover test at every breakpoint
to either certify local optimality or produce a strictly better cube to
insert.  Termination follows from the strict decrease of the objective:
no cube sequence is ever visited twice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .complex import TAU_EMB, Cube, Point, is_valid_point
from .errors import CatzeroError, DegenerateLeg, InvalidPoint, TooLarge
from .interval import IntervalFrame, interval_endpoints
from .pip import (
    OrderIdeal,
    Pip,
    _bits,
    is_maximal_antichain,
    iter_consistent_ideal_masks,
    maximal_elements,
)
from .touring import DEFAULT_MAX_STEPS, solve_box_touring

logger = logging.getLogger("catzero.geodesic")

DEFAULT_TOL = 1e-8
SEQUENCE_GUARD = 100_000
_BUDGET_CAP = 317  # 10 * 317^2 is just above the default sequence guard


# ---------------------------------------------------------------------------
# cube sequences


@dataclass(frozen=True)
class CubeSequence:
    """Ordered cubes with increasing ideals over an interval poset."""

    q: Pip
    cubes: tuple[Cube, ...]

    @classmethod
    def from_ideals(cls, q: Pip, ideals: Iterable[Iterable[str]]) -> "CubeSequence":
        cubes = []
        for members in ideals:
            members = frozenset(members)
            free = maximal_elements(OrderIdeal(q, members)).members
            cubes.append(Cube(q, members, free))
        return cls(q, tuple(cubes))

    @property
    def ideals(self) -> tuple[frozenset[str], ...]:
        return tuple(c.ideal for c in self.cubes)

    def __len__(self) -> int:
        return len(self.cubes)

    def __iter__(self):
        return iter(self.cubes)


def normal_cube_path(q: Pip) -> list[OrderIdeal]:
    """Ideals obtained by iteratively absorbing all minimal elements."""
    n = len(q.elements)
    full = (1 << n) - 1
    out: list[int] = []
    current = 0
    while current != full:
        remaining = full & ~current
        mins = 0
        for i in _bits(remaining):
            if not (q.down_mask(i) & ~(1 << i) & remaining):
                mins |= 1 << i
        current |= mins
        out.append(current)
    return [OrderIdeal(q, q.names_of(m)) for m in out]


def extended_normal_cube_path(
    q: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tau: float = TAU_EMB,
) -> CubeSequence:
    """Normal cube path with every free set enlarged to all maximal elements."""
    if len(q.elements) == 0:
        return CubeSequence(q, (Cube(q, frozenset(), frozenset()),))
    seq = CubeSequence.from_ideals(q, [oi.members for oi in normal_cube_path(q)])
    reason = validate_cube_sequence(q, seq, x, y, tau)
    if reason is not None:
        raise CatzeroError(f"extended normal cube path is not valid: {reason}")
    return seq


def validate_cube_sequence(
    q: Pip,
    seq: CubeSequence,
    x: Point | Mapping[str, float] | None = None,
    y: Point | Mapping[str, float] | None = None,
    tau: float = TAU_EMB,
) -> str | None:
    """Return a diagnostic string when the sequence is not valid, else None."""
    cubes = seq.cubes
    if not cubes:
        return "sequence is empty"
    full = frozenset(q.elements)
    if cubes[-1].ideal != full:
        return "last ideal does not cover the whole interval poset"
    for i, cube in enumerate(cubes):
        if i > 0:
            prev = cubes[i - 1]
            if not prev.ideal < cube.ideal:
                return f"ideal {i} does not strictly contain ideal {i - 1}"
            if not (cube.ideal - prev.ideal) <= cube.free:
                return f"step into cube {i} leaves its free set"
        if not is_maximal_antichain(q, cube.free):
            return f"free set of cube {i} is not a maximal antichain"
    if x is not None:
        x = x if isinstance(x, Point) else Point(x)
        if not cubes[0].contains(x, max(tau, 1e-7)):
            return "first cube does not contain the start point"
    if y is not None:
        y = y if isinstance(y, Point) else Point(y)
        if not cubes[-1].contains(y, max(tau, 1e-7)):
            return "last cube does not contain the end point"
    return None


def is_valid_cube_sequence(
    q: Pip,
    seq: CubeSequence,
    x: Point | Mapping[str, float] | None = None,
    y: Point | Mapping[str, float] | None = None,
) -> bool:
    return validate_cube_sequence(q, seq, x, y) is None


# ---------------------------------------------------------------------------
# touring through a sequence


class TraceEntry(NamedTuple):
    ideals: tuple[tuple[str, ...], ...]
    objective: float


@dataclass(frozen=True)
class TouringSolution:
    sequence: CubeSequence
    polyline: tuple[Point, ...]       # x, interior breakpoints, y (interval frame)
    vectors: np.ndarray               # same data as (k+1, m) array
    objective: float
    residual: float
    iterations: int
    converged: bool

    @property
    def breakpoints(self) -> tuple[Point, ...]:
        return self.polyline[1:-1]


def _face_boxes(seq: CubeSequence) -> tuple[np.ndarray, np.ndarray]:
    elements = seq.q.elements
    index = {e: j for j, e in enumerate(elements)}
    k = len(seq.cubes)
    lo = np.zeros((k - 1, len(elements)))
    hi = np.zeros((k - 1, len(elements)))
    for i in range(k - 1):
        shared = seq.cubes[i].free & seq.cubes[i + 1].free
        for e in seq.cubes[i].ideal:
            j = index[e]
            if e in shared:
                hi[i, j] = 1.0
            else:
                lo[i, j] = 1.0
                hi[i, j] = 1.0
    return lo, hi


def touring_solve(
    seq: CubeSequence,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
    max_steps: int = DEFAULT_MAX_STEPS,
    init: np.ndarray | None = None,
    eps_floor: float | None = None,
    merge: bool = True,
) -> TouringSolution:
    """Shortest path through the faces shared by consecutive cubes.

    When the iteration cap is hit the best iterate is returned with
    ``converged`` False and the achieved projected-gradient residual.
    """
    x = x if isinstance(x, Point) else Point(x)
    y = y if isinstance(y, Point) else Point(y)
    elements = seq.q.elements
    lo, hi = _face_boxes(seq)
    kwargs = {} if eps_floor is None else {"eps_floor": eps_floor}
    kwargs["merge"] = merge
    result = solve_box_touring(
        lo,
        hi,
        np.array(x.to_vector(elements), dtype=float),
        np.array(y.to_vector(elements), dtype=float),
        tol=tol,
        max_steps=max_steps,
        init=init,
        **kwargs,
    )
    polyline = tuple(Point.from_vector(elements, row) for row in result.points)
    return TouringSolution(
        sequence=seq,
        polyline=polyline,
        vectors=result.points,
        objective=result.objective,
        residual=result.residual,
        iterations=result.iterations,
        converged=result.converged,
    )


# ---------------------------------------------------------------------------
# zero tension


def _nearest_distinct(pts: np.ndarray, i: int, threshold: float) -> tuple[int | None, int | None]:
    prev = None
    for j in range(i - 1, -1, -1):
        if np.linalg.norm(pts[i] - pts[j]) > threshold:
            prev = j
            break
    nxt = None
    for j in range(i + 1, len(pts)):
        if np.linalg.norm(pts[i] - pts[j]) > threshold:
            nxt = j
            break
    return prev, nxt


def zero_tension_residual(
    seq: CubeSequence,
    breakpoints: Sequence[Point | Mapping[str, float]],
    tol: float = DEFAULT_TOL,
) -> float:
    """Worst mismatch of face-projected unit directions over the breakpoints.

    ``breakpoints`` is the whole polyline including both endpoints.  Legs
    shorter than ``10 * tol`` carry no direction and are skipped; a
    breakpoint adjacent only to skipped legs contributes nothing.
    """
    elements = seq.q.elements
    index = {e: j for j, e in enumerate(elements)}
    pts = np.array(
        [
            (p if isinstance(p, Point) else Point(p)).to_vector(elements)
            for p in breakpoints
        ],
        dtype=float,
    )
    if len(pts) != len(seq.cubes) + 1:
        raise ValueError("polyline length does not match the cube sequence")
    threshold = 10 * tol
    if len(pts) >= 2:
        legs = np.linalg.norm(pts[1:] - pts[:-1], axis=1)
        if len(seq.cubes) >= 2 and np.all(
            np.linalg.norm(pts - pts[0], axis=1) <= threshold
        ):
            raise DegenerateLeg("every leg of the path collapsed below tolerance")
    worst = 0.0
    for i in range(1, len(pts) - 1):
        shared = seq.cubes[i - 1].free & seq.cubes[i].free
        if not shared:
            continue
        u = pts[i] - pts[i - 1]
        v = pts[i + 1] - pts[i]
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu <= threshold or nv <= threshold:
            continue
        cols = [index[e] for e in shared]
        diff = u[cols] / nu - v[cols] / nv
        worst = max(worst, float(np.linalg.norm(diff)))
    return worst


# ---------------------------------------------------------------------------
# no-shortcut test


@dataclass(frozen=True)
class ShortcutWitness:
    """A strictly shorter local rerouting found at one breakpoint."""

    index: int
    a_left: frozenset[str]
    b_left: frozenset[str]
    a_right: frozenset[str]
    b_right: frozenset[str]
    ideal: frozenset[str]
    free: frozenset[str]
    cover_weight: float


def min_weight_vertex_cover(
    left_weights: Mapping[str, float],
    right_weights: Mapping[str, float],
    edges: Iterable[tuple[str, str]],
) -> tuple[frozenset[str], float]:
    """Minimum-weight vertex cover of a bipartite graph.

    Uses the Koenig-style reduction: a cover is determined by its left
    part ``S`` plus the neighborhood of the uncovered left vertices, so
    scanning subsets of the smaller-indexed side is exhaustive.  Ties are
    broken toward the lexicographically smallest cover, which is always
    irredundant, so the complement is a maximal independent set.
    """
    left = sorted(left_weights)
    right = sorted(right_weights)
    adjacency = {l: set() for l in left}
    for a, b in edges:
        adjacency[a].add(b)
    best_cover: tuple[str, ...] | None = None
    best_weight = 0.0
    for r in range(len(left) + 1):
        for chosen in combinations(left, r):
            uncovered = [l for l in left if l not in chosen]
            needed = set()
            for l in uncovered:
                needed |= adjacency[l]
            cover = tuple(sorted(set(chosen) | needed))
            weight = sum(left_weights[v] for v in chosen) + sum(
                right_weights[v] for v in needed
            )
            if (
                best_cover is None
                or weight < best_weight
                or (weight == best_weight and cover < best_cover)
            ):
                best_cover, best_weight = cover, weight
    assert best_cover is not None
    return frozenset(best_cover), best_weight


def shortcut_check(
    q: Pip,
    cube_a: Cube,
    cube_b: Cube,
    p_prev: Point | Mapping[str, float],
    p_mid: Point | Mapping[str, float],
    p_next: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
    index: int = 0,
) -> ShortcutWitness | None:
    """Search for an improving intermediate cube between two consecutive cubes.

    Vertex weights are the squared direction components normalized by the
    in-leg restricted to ``M_a - M_b`` and the out-leg restricted to
    ``M_b - M_a``.  A vertex cover lighter than ``1 - 10 * tol`` certifies
    a strictly shorter path through the cube spanned by the uncovered
    vertices together with the shared free directions.
    """
    elements = q.elements
    index_of = {e: j for j, e in enumerate(elements)}
    exits = sorted(cube_a.free - cube_b.free)
    enters = sorted(cube_b.free - cube_a.free)
    shared = cube_a.free & cube_b.free
    if not exits or not enters:
        return None
    for l in exits:
        for r in enters:
            if q.lt(r, l) or r in cube_a.ideal:
                raise ValueError(
                    "cubes are not consecutive members of a valid sequence"
                )

    as_vec = lambda p: np.array(
        (p if isinstance(p, Point) else Point(p)).to_vector(elements), dtype=float
    )
    u = as_vec(p_mid) - as_vec(p_prev)
    v = as_vec(p_next) - as_vec(p_mid)
    u_sq = {e: float(u[index_of[e]] ** 2) for e in exits}
    v_sq = {e: float(v[index_of[e]] ** 2) for e in enters}
    u_norm = sum(u_sq.values())
    v_norm = sum(v_sq.values())
    if u_norm <= (10 * tol) ** 2 or v_norm <= (10 * tol) ** 2:
        return None

    left_weights = {e: w / u_norm for e, w in u_sq.items()}
    right_weights = {e: w / v_norm for e, w in v_sq.items()}
    edges = [(l, r) for l in exits for r in enters if q.lt(l, r)]
    cover, weight = min_weight_vertex_cover(left_weights, right_weights, edges)
    if weight >= 1.0 - 10 * tol:
        return None

    b_left = frozenset(exits) - cover
    a_right = frozenset(enters) - cover
    b_right = frozenset(enters) & cover
    ideal = cube_b.ideal - b_right
    free = shared | b_left | a_right
    if ideal == cube_a.ideal or ideal == cube_b.ideal:
        return None
    if not is_maximal_antichain(q, free):
        raise CatzeroError("shortcut produced a non-maximal antichain")
    return ShortcutWitness(
        index=index,
        a_left=frozenset(exits) & cover,
        b_left=b_left,
        a_right=a_right,
        b_right=b_right,
        ideal=ideal,
        free=free,
        cover_weight=weight,
    )


# ---------------------------------------------------------------------------
# refitting


def refit_sequence(
    q: Pip,
    seq: CubeSequence,
    breakpoints: Sequence[Point | Mapping[str, float]],
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
) -> CubeSequence:
    """Drop cubes traversed with zero length, keeping the sequence valid.

    The pruned sequence has every free set re-extended to the maximal
    elements of its ideal.  If pruning would break validity the input is
    returned unchanged; termination of the main loop is preserved by the
    strict objective decrease there.
    """
    elements = q.elements
    pts = np.array(
        [
            (p if isinstance(p, Point) else Point(p)).to_vector(elements)
            for p in breakpoints
        ],
        dtype=float,
    )
    if len(pts) != len(seq.cubes) + 1:
        raise ValueError("polyline length does not match the cube sequence")
    legs = np.linalg.norm(pts[1:] - pts[:-1], axis=1)
    keep = [i for i in range(len(seq.cubes)) if legs[i] > 10 * tol]
    if len(seq.cubes) - 1 not in keep:
        keep.append(len(seq.cubes) - 1)
    keep.sort()
    if keep == list(range(len(seq.cubes))):
        return seq
    candidate = CubeSequence.from_ideals(q, [seq.cubes[i].ideal for i in keep])
    reason = validate_cube_sequence(q, candidate, x, y)
    if reason is not None:
        logger.debug("refit rejected: %s", reason)
        return seq
    return candidate


# ---------------------------------------------------------------------------
# valid-sequence enumeration (oracle support)


def _max_mask(q: Pip, mask: int) -> int:
    out = 0
    for i in _bits(mask):
        if not (q.up_mask(i) & ~(1 << i) & mask):
            out |= 1 << i
    return out


def _is_maximal_antichain_mask(q: Pip, mask: int) -> bool:
    touched = 0
    for i in _bits(mask):
        touched |= q.up_mask(i) | q.down_mask(i)
    return touched == (1 << len(q.elements)) - 1


def _admissible_masks(q: Pip) -> list[int]:
    out = []
    for mask in iter_consistent_ideal_masks(q):
        if mask and _is_maximal_antichain_mask(q, _max_mask(q, mask)):
            out.append(mask)
    out.sort(key=lambda m: (bin(m).count("1"), tuple(sorted(q.names_of(m)))))
    return out


def count_maximal_antichains(q: Pip, cap: int = _BUDGET_CAP) -> int:
    count = 0
    for mask in iter_consistent_ideal_masks(q):
        if mask and _is_maximal_antichain_mask(q, _max_mask(q, mask)):
            count += 1
            if count >= cap:
                return cap
    return max(count, 1)


def count_valid_sequences(
    q: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tau: float = TAU_EMB,
) -> int:
    """Number of valid cube sequences between the carriers of x and y."""
    if len(q.elements) == 0:
        return 1
    x = x if isinstance(x, Point) else Point(x)
    nodes = _admissible_masks(q)
    full = (1 << len(q.elements)) - 1
    counts = {full: 1}
    for a in sorted(nodes, key=lambda m: -bin(m).count("1")):
        if a == full:
            continue
        total = 0
        for b in nodes:
            if a != b and a & b == a and (b & ~a) & ~_max_mask(q, b) == 0:
                total += counts.get(b, 0)
        counts[a] = total
    total = 0
    for a in nodes:
        cube = Cube(q, q.names_of(a), q.names_of(_max_mask(q, a)))
        if cube.contains(x, max(tau, 1e-7)):
            total += counts.get(a, 0)
    return total


def _iter_ideal_chains(q: Pip, x: Point, tau: float):
    nodes = _admissible_masks(q)
    full = (1 << len(q.elements)) - 1
    succ: dict[int, list[int]] = {}
    for a in nodes:
        succ[a] = [
            b
            for b in nodes
            if a != b and a & b == a and (b & ~a) & ~_max_mask(q, b) == 0
        ]
    starts = []
    for a in nodes:
        cube = Cube(q, q.names_of(a), q.names_of(_max_mask(q, a)))
        if cube.contains(x, max(tau, 1e-7)):
            starts.append(a)

    def rec(path: list[int]):
        if path[-1] == full:
            yield tuple(path)
            return
        for b in succ[path[-1]]:
            path.append(b)
            yield from rec(path)
            path.pop()

    for start in starts:
        yield from rec([start])


# ---------------------------------------------------------------------------
# geodesic paths


@dataclass(frozen=True)
class GeodesicPath:
    """A polygonal path with its carrier cubes and certification data."""

    breakpoints: tuple[Point, ...]     # original frame, endpoints included
    carrier: CubeSequence
    frame: IntervalFrame | None
    length: float
    certified: bool
    zero_tension_residual: float
    shortcut_clean: bool
    iterations: int
    trace: tuple[TraceEntry, ...]
    status: str


def _trivial_path(pip: Pip, x: Point, y: Point, frame: IntervalFrame) -> GeodesicPath:
    delta = np.array(x.to_vector(pip.elements)) - np.array(y.to_vector(pip.elements))
    q = frame.q
    carrier = CubeSequence(q, (Cube(q, frozenset(q.elements), frozenset()),)) if len(
        q.elements
    ) else CubeSequence(q, (Cube(q, frozenset(), frozenset()),))
    return GeodesicPath(
        breakpoints=(x, y),
        carrier=carrier,
        frame=frame,
        length=float(np.linalg.norm(delta)),
        certified=True,
        zero_tension_residual=0.0,
        shortcut_clean=True,
        iterations=0,
        trace=(),
        status="certified",
    )


def _scan_shortcuts(
    q: Pip, seq: CubeSequence, sol: TouringSolution, tol: float
) -> ShortcutWitness | None:
    pts = sol.vectors
    elements = q.elements
    threshold = 10 * tol
    for i in range(1, len(pts) - 1):
        prev, nxt = _nearest_distinct(pts, i, threshold)
        if prev is None or nxt is None:
            continue
        witness = shortcut_check(
            q,
            seq.cubes[i - 1],
            seq.cubes[i],
            Point.from_vector(elements, pts[prev]),
            Point.from_vector(elements, pts[i]),
            Point.from_vector(elements, pts[nxt]),
            tol=tol,
            index=i,
        )
        if witness is not None:
            return witness
    return None


def _post_insertion_init(
    q: Pip, sol: TouringSolution, witness: ShortcutWitness, step: float = 0.1
) -> np.ndarray:
    """Warm start for the touring solve after a cube insertion.

    The old breakpoints are kept and the split breakpoint is duplicated
    with the copies pushed apart along the witness directions (leaving
    the exited coordinates, entering the new ones).  Starting on the old
    kink would otherwise make the escape from it arbitrarily slow.
    """
    index = {e: j for j, e in enumerate(q.elements)}
    old = sol.vectors[1:-1]
    split = sol.vectors[witness.index].copy()
    before = split.copy()
    after = split.copy()
    for e in witness.b_left:
        before[index[e]] -= step
    for e in witness.a_right:
        after[index[e]] += step
    return np.vstack([old[: witness.index - 1], before, after, old[witness.index:]])


def _refit_loop(
    q: Pip,
    seq: CubeSequence,
    sol: TouringSolution,
    x: Point,
    y: Point,
    tol: float,
    max_steps: int,
) -> tuple[CubeSequence, TouringSolution]:
    for _ in range(len(seq.cubes)):
        pruned = refit_sequence(q, seq, sol.polyline, x, y, tol)
        if pruned is seq or pruned.ideals == seq.ideals:
            return seq, sol
        seq = pruned
        sol = touring_solve(seq, x, y, tol, max_steps)
    return seq, sol


def geodesic(
    pip: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
    max_outer: int | None = None,
    max_inner: int = DEFAULT_MAX_STEPS,
    tau: float = TAU_EMB,
) -> GeodesicPath:
    """Geodesic between two valid points of the complex of ``pip``.

    Runs the touring / shortcut loop until no improving cube exists, then
    certifies the result: carried by a valid cube sequence, zero-tension
    residual at most ``10 * tol``, and no breakpoint admits a vertex cover
    lighter than one.  When the iteration budget is exhausted the best
    path found so far is returned with ``certified`` False.
    """
    x = x if isinstance(x, Point) else Point(x)
    y = y if isinstance(y, Point) else Point(y)
    for label, point in (("x", x), ("y", y)):
        if not is_valid_point(pip, point, tau):
            raise InvalidPoint(f"{label} violates the embedding constraints")

    frame = interval_endpoints(pip, x, y, tau)
    q = frame.q
    elements = q.elements
    xv = np.array(frame.x_local.to_vector(elements), dtype=float)
    yv = np.array(frame.y_local.to_vector(elements), dtype=float)
    if len(elements) == 0 or float(np.linalg.norm(yv - xv)) <= 10 * tol:
        return _trivial_path(pip, x, y, frame)

    seq = extended_normal_cube_path(q, frame.x_local, frame.y_local, tau)
    budget = max_outer if max_outer is not None else 10 * count_maximal_antichains(q) ** 2

    sol = touring_solve(seq, frame.x_local, frame.y_local, tol, max_inner)
    seq, sol = _refit_loop(q, seq, sol, frame.x_local, frame.y_local, tol, max_inner)
    trace = [TraceEntry(tuple(tuple(sorted(i)) for i in seq.ideals), sol.objective)]
    status = "pending"
    shortcut_clean = False

    while True:
        witness = _scan_shortcuts(q, seq, sol, tol)
        if witness is None:
            shortcut_clean = True
            break
        if len(trace) >= max(budget, 1):
            status = "budget-exhausted"
            logger.info("iteration budget exhausted after %d rounds", len(trace))
            break
        cubes = seq.cubes[: witness.index] + (
            Cube(q, witness.ideal, witness.free),
        ) + seq.cubes[witness.index:]
        new_seq = CubeSequence(q, cubes)
        reason = validate_cube_sequence(q, new_seq, frame.x_local, frame.y_local)
        if reason is not None:
            status = "insertion-invalid"
            logger.warning("shortcut insertion rejected: %s", reason)
            break
        init = _post_insertion_init(q, sol, witness)
        inserted_seq = new_seq
        new_sol = touring_solve(
            new_seq, frame.x_local, frame.y_local, tol, max_inner, init=init
        )
        new_seq, new_sol = _refit_loop(
            q, new_seq, new_sol, frame.x_local, frame.y_local, tol, max_inner
        )
        if new_sol.objective > sol.objective - tol:
            # marginal shortcut: the improvement can sit below the cluster
            # gap, where merging flattens it; retry once without merging
            rescue = touring_solve(
                inserted_seq,
                frame.x_local,
                frame.y_local,
                tol,
                max_inner,
                init=init,
                merge=False,
            )
            if rescue.converged and rescue.objective <= sol.objective - tol:
                seq, sol = inserted_seq, rescue
                trace.append(
                    TraceEntry(tuple(tuple(sorted(i)) for i in seq.ideals), sol.objective)
                )
                continue
            status = "stalled"
            logger.info(
                "shortcut at breakpoint %d did not improve the objective "
                "(%.12g -> %.12g); stopping",
                witness.index,
                sol.objective,
                new_sol.objective,
            )
            break
        seq, sol = new_seq, new_sol
        trace.append(TraceEntry(tuple(tuple(sorted(i)) for i in seq.ideals), sol.objective))
        logger.info(
            "inserted cube at breakpoint %d, objective %.12g", witness.index, sol.objective
        )

    try:
        residual = zero_tension_residual(seq, sol.polyline, tol)
    except DegenerateLeg:
        residual = float("inf")
    certified = (
        shortcut_clean and sol.converged and residual <= 10 * tol and status == "pending"
    )
    breakpoints = tuple(frame.to_global(p) for p in sol.polyline)
    return GeodesicPath(
        breakpoints=breakpoints,
        carrier=seq,
        frame=frame,
        length=sol.objective,
        certified=certified,
        zero_tension_residual=residual,
        shortcut_clean=shortcut_clean,
        iterations=len(trace),
        trace=tuple(trace),
        status="certified" if certified else (status if status != "pending" else "uncertified"),
    )


def brute_force_geodesic(
    pip: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
    guard: int = SEQUENCE_GUARD,
    max_inner: int = DEFAULT_MAX_STEPS,
    tau: float = TAU_EMB,
) -> GeodesicPath:
    """Exhaustive reference: tour every valid cube sequence, keep the best.

    Independent of the iterative algorithm; used as the test oracle.
    """
    x = x if isinstance(x, Point) else Point(x)
    y = y if isinstance(y, Point) else Point(y)
    for label, point in (("x", x), ("y", y)):
        if not is_valid_point(pip, point, tau):
            raise InvalidPoint(f"{label} violates the embedding constraints")

    frame = interval_endpoints(pip, x, y, tau)
    q = frame.q
    elements = q.elements
    xv = np.array(frame.x_local.to_vector(elements), dtype=float)
    yv = np.array(frame.y_local.to_vector(elements), dtype=float)
    if len(elements) == 0 or float(np.linalg.norm(yv - xv)) <= 10 * tol:
        return _trivial_path(pip, x, y, frame)
    if len(elements) > 20:
        raise TooLarge("interval poset too large for exhaustive enumeration")
    total = count_valid_sequences(q, frame.x_local, frame.y_local, tau)
    if total > guard:
        raise TooLarge(f"{total} valid cube sequences exceed the guard {guard}")

    # two-phase scan: a cheap continuation ranks every sequence by an
    # upper bound on its optimum, then only near-winners are polished
    screened: list[tuple[float, CubeSequence]] = []
    for chain in _iter_ideal_chains(q, frame.x_local, tau):
        seq = CubeSequence.from_ideals(q, [q.names_of(m) for m in chain])
        coarse = touring_solve(
            seq, frame.x_local, frame.y_local, max(tol, 1e-5), max_inner, eps_floor=1e-6
        )
        screened.append((coarse.objective, seq))
    cutoff = min(obj for obj, _ in screened) + 0.02
    best: TouringSolution | None = None
    best_seq: CubeSequence | None = None
    for obj, seq in screened:
        if obj > cutoff:
            continue
        sol = touring_solve(seq, frame.x_local, frame.y_local, tol, max_inner)
        if best is None or sol.objective < best.objective:
            best, best_seq = sol, seq
    assert best is not None and best_seq is not None

    try:
        residual = zero_tension_residual(best_seq, best.polyline, tol)
    except DegenerateLeg:
        residual = float("inf")
    witness = _scan_shortcuts(q, best_seq, best, tol)
    certified = witness is None and best.converged and residual <= 10 * tol
    breakpoints = tuple(frame.to_global(p) for p in best.polyline)
    return GeodesicPath(
        breakpoints=breakpoints,
        carrier=best_seq,
        frame=frame,
        length=best.objective,
        certified=certified,
        zero_tension_residual=residual,
        shortcut_clean=witness is None,
        iterations=1,
        trace=(TraceEntry(tuple(tuple(sorted(i)) for i in best_seq.ideals), best.objective),),
        status="certified" if certified else "uncertified",
    )


def distance(
    pip: Pip,
    x: Point | Mapping[str, float],
    y: Point | Mapping[str, float],
    tol: float = DEFAULT_TOL,
) -> float:
    return geodesic(pip, x, y, tol).length
