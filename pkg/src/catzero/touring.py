"""Fixed-order touring through axis-aligned boxes.

The shortest path visiting a fixed sequence of boxes minimizes a sum of
Euclidean leg lengths, a convex but non-smooth objective.  Each leg is
smoothed to ``sqrt(|d|^2 + eps^2)`` and minimized by projected
accelerated gradient descent with backtracking, driving ``eps`` from
1e-2 down to 1e-12 (one decade per stage).  Projection onto a box is a
clip, and convexity makes the unique minimum global, so the
continuation converges from any feasible start.

Paths that pinch through a vertex make the smoothed problem stiff: a
leg that wants length zero has curvature 1/eps.  Once ``eps`` is small,
breakpoints that have collapsed onto each other are merged into a
single variable constrained to the intersection of their boxes (pinned
outright when they collapse onto an endpoint).  The reduced problem is
well conditioned and the merged legs come out exactly zero.

A stage finishes when the unit-step projected gradient satisfies
``|p - clip(p - grad)| <= tol * (1 + objective)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS_STAGES = tuple(10.0 ** -k for k in range(2, 13))
DEFAULT_MAX_STEPS = 100_000
_STAGE_CAP = 2_500
_POLISH_CAP = 400
_MERGE_START_EPS = 1e-4
_CLUSTER_GAP = 1e-4

Layout = tuple[list[list[int]], dict[int, int]]


@dataclass
class BoxTouringResult:
    points: np.ndarray          # (k+1, m) rows: x, interior breakpoints, y
    objective: float            # exact (unsmoothed) length at the returned points
    residual: float             # projected-gradient norm at the last stage
    iterations: int
    converged: bool


def _f_only(pts: np.ndarray, eps2: float) -> float:
    d = pts[1:] - pts[:-1]
    return float(np.sqrt((d * d).sum(axis=1) + eps2).sum())


def _f_grad(pts: np.ndarray, eps2: float) -> tuple[float, np.ndarray]:
    d = pts[1:] - pts[:-1]
    legs = np.sqrt((d * d).sum(axis=1) + eps2)
    g = d / legs[:, None]
    return float(legs.sum()), g[:-1] - g[1:]


def _proj_grad_norm(p: np.ndarray, grad: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> float:
    step = p - np.clip(p - grad, lo, hi)
    return float(np.sqrt((step * step).sum()))


def _detect_clusters(polyline: np.ndarray, gap: float = _CLUSTER_GAP) -> Layout | None:
    """Group interior points separated by less than the cluster gap.

    Returns ``(groups, pins)`` over interior indices, where runs touching
    the first or last polyline point are pinned to it (-1 start, -2 end).
    None when no two consecutive points cluster.
    """
    gaps = np.linalg.norm(polyline[1:] - polyline[:-1], axis=1)
    if not (gaps < gap).any():
        return None
    last = len(polyline) - 1
    labels = list(range(len(polyline)))
    for i, g in enumerate(gaps):
        if g < gap:
            labels[i + 1] = labels[i]
    pins: dict[int, int] = {}
    groups: list[list[int]] = []
    for i in range(1, last):
        if labels[i] == labels[0]:
            pins[i - 1] = -1
        elif labels[i] == labels[last]:
            pins[i - 1] = -2
        elif groups and labels[i] == labels[groups[-1][-1] + 1]:
            groups[-1].append(i - 1)
        else:
            groups.append([i - 1])
    return groups, pins


def _build_reduced(
    lo: np.ndarray,
    hi: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    layout: Layout,
    expanded: np.ndarray,
) -> tuple[list[list[int]], np.ndarray, np.ndarray, np.ndarray]:
    """Rows, boxes and start values for the merged problem.

    A pinned breakpoint becomes a degenerate row fixed at the endpoint
    clipped into that breakpoint's own box; a merged run becomes one row
    constrained to the intersection of the members' boxes.
    """
    groups, pins = layout
    rows: list[list[int]] = [[i] for i in sorted(pins)]
    rows.extend(groups)
    rows.sort(key=lambda g: g[0])

    m = lo.shape[1]
    g_lo = np.empty((len(rows), m))
    g_hi = np.empty((len(rows), m))
    g_p = np.empty((len(rows), m))
    for row, members in enumerate(rows):
        first = members[0]
        if first in pins:
            target = x if pins[first] == -1 else y
            value = np.clip(target, lo[first], hi[first])
            g_lo[row] = g_hi[row] = g_p[row] = value
        else:
            g_lo[row] = lo[members].max(axis=0)
            g_hi[row] = hi[members].min(axis=0)
            bad = g_lo[row] > g_hi[row]
            if bad.any():
                mid = 0.5 * (g_lo[row][bad] + g_hi[row][bad])
                g_lo[row][bad] = mid
                g_hi[row][bad] = mid
            g_p[row] = np.clip(expanded[members].mean(axis=0), g_lo[row], g_hi[row])
    return rows, g_lo, g_hi, g_p


def _expand(rows: list[list[int]], g_p: np.ndarray, k_interior: int, m: int) -> np.ndarray:
    out = np.empty((k_interior, m))
    for row, members in enumerate(rows):
        out[members] = g_p[row]
    return out


def solve_box_touring(
    lo: np.ndarray,
    hi: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    tol: float = 1e-8,
    max_steps: int = DEFAULT_MAX_STEPS,
    init: np.ndarray | None = None,
    eps_floor: float = EPS_STAGES[-1],
    merge: bool = True,
) -> BoxTouringResult:
    """Minimize total length of x -> p_1 -> ... -> p_{k-1} -> y with p_i in box i.

    ``eps_floor`` stops the continuation early; the returned objective is
    then an upper bound accurate to roughly the floor, useful for cheap
    screening of many instances.  ``merge=False`` disables breakpoint
    clustering, which resolves separations below the cluster gap exactly
    but can be slow when a leg truly wants length zero.
    """
    k_interior, m = lo.shape
    if k_interior == 0:
        pts = np.vstack([x, y])
        return BoxTouringResult(pts, float(np.linalg.norm(y - x)), 0.0, 0, True)

    if init is None:
        line = np.linspace(x, y, k_interior + 2)[1:-1]
        p = np.clip(line, lo, hi)
    else:
        p = np.clip(np.asarray(init, dtype=float), lo, hi)

    rows: list[list[int]] = [[i] for i in range(k_interior)]
    layout: Layout | None = None
    g_lo, g_hi, g_p = lo.copy(), hi.copy(), p

    total = 0
    residual = np.inf
    converged = True
    lipschitz = 1.0
    stages = [e for e in EPS_STAGES if e >= eps_floor] or [EPS_STAGES[0]]
    stage = 0
    while stage < len(stages):
        eps = stages[stage]
        budget = min(_STAGE_CAP, max_steps - total)
        if budget <= 0:
            converged = False
            break
        pts = np.empty((len(g_p) + 2, m))
        pts[0] = x
        pts[-1] = y
        # intermediate stages only warm-start the next one, so they may
        # stop early; the last stage runs at the requested tolerance
        stage_tol = max(tol, eps * 1e-2) if stage < len(stages) - 1 else tol
        g_p, lipschitz, used, residual, stage_ok = _fista_stage(
            pts, g_p, g_lo, g_hi, eps * eps, stage_tol, budget, lipschitz
        )
        total += used
        if merge and eps <= _MERGE_START_EPS:
            # merge collapsed breakpoints; a stage stuck on a stiff kink is
            # retried on the reduced, well-conditioned problem.  Legs that
            # want length zero settle near the smoothing scale, so the
            # detection gap tracks eps.
            expanded = _expand(rows, g_p, k_interior, m)
            candidate = _detect_clusters(
                np.vstack([x, expanded, y]), max(_CLUSTER_GAP, 30.0 * eps)
            )
            if candidate is not None and candidate != layout:
                layout = candidate
                rows, g_lo, g_hi, g_p = _build_reduced(lo, hi, x, y, layout, expanded)
                lipschitz = 1.0
                continue
        if not stage_ok:
            converged = False
            break
        stage += 1

    expanded = _expand(rows, g_p, k_interior, m)
    pts = np.vstack([x, expanded, y])
    objective = _f_only(pts, 0.0)

    if layout is not None and eps_floor <= EPS_STAGES[-1]:
        # verify the merge at full precision: a short unmerged polish pulls
        # apart any leg that was wrongly collapsed; the exactly merged
        # answer is kept unless the polish is strictly shorter
        pts_full = np.empty((k_interior + 2, m))
        pts_full[0] = x
        pts_full[-1] = y
        polished, _, used, p_res, p_ok = _fista_stage(
            pts_full,
            expanded.copy(),
            lo,
            hi,
            EPS_STAGES[-1] ** 2,
            tol,
            min(_POLISH_CAP, max(1, max_steps - total)),
            1.0,
        )
        total += used
        pts_full[1:-1] = polished
        polished_objective = _f_only(pts_full, 0.0)
        if polished_objective < objective - max(tol, 1e-12):
            return BoxTouringResult(
                pts_full.copy(), polished_objective, p_res, total, p_ok
            )

    return BoxTouringResult(pts, objective, residual, total, converged)


def _fista_stage(
    pts: np.ndarray,
    p: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    eps2: float,
    tol: float,
    budget: int,
    lipschitz: float,
) -> tuple[np.ndarray, float, int, float, bool]:
    prev = p
    momentum = p
    t = 1.0
    pts[1:-1] = p
    f_cur, g_cur = _f_grad(pts, eps2)
    residual = _proj_grad_norm(p, g_cur, lo, hi)
    if residual <= tol * (1.0 + f_cur):
        return p, lipschitz, 0, residual, True

    f_m, g_m = f_cur, g_cur
    for it in range(1, budget + 1):
        while True:
            cand = np.clip(momentum - g_m / lipschitz, lo, hi)
            delta = cand - momentum
            pts[1:-1] = cand
            f_cand = _f_only(pts, eps2)
            bound = f_m + (g_m * delta).sum() + 0.5 * lipschitz * (delta * delta).sum()
            if f_cand <= bound + 1e-15 or lipschitz > 1e16:
                break
            lipschitz *= 2.0

        f_cand, g_cand = _f_grad(pts, eps2)
        residual = _proj_grad_norm(cand, g_cand, lo, hi)
        if residual <= tol * (1.0 + f_cand):
            return cand, lipschitz, it, residual, True

        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        momentum = np.clip(cand + ((t - 1.0) / t_next) * (cand - prev), lo, hi)
        if f_cand > f_cur:        # objective went up: drop momentum
            momentum = cand
            t_next = 1.0
        prev, t, f_cur = cand, t_next, f_cand
        lipschitz = max(lipschitz * 0.9, 1e-8)
        pts[1:-1] = momentum
        f_m, g_m = _f_grad(pts, eps2)

    return prev, lipschitz, budget, residual, False
