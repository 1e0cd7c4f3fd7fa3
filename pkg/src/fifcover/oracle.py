"""Independent sampling of the attractor, used to verify coverings.

Two samplers approximate the interpolant's graph: random iteration (the
chaos game) and one application of all depth-m composed maps to a
discretized chord of the data.  Neither uses the covering machinery, so
containment checks against them are genuine cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .analysis import DEFAULT_DEPTH_CAP, composed_coefficient_arrays
from .covering import Covering, covering_distances
from .model import FifSystem


@dataclass(frozen=True)
class AttractorSample:
    """A finite point-cloud approximation of the graph."""

    points: np.ndarray  # shape (N, 2)
    seed: int | None
    burn_in: int
    method: str


@dataclass(frozen=True)
class ContainmentReport:
    checked: int
    violations: int
    max_excess: float


def chaos_game(system: FifSystem, n_points: int, seed: int,
               burn_in: int = 100) -> AttractorSample:
    """Random iteration starting from the first data point.

    Maps are picked with probability proportional to their horizontal
    contraction factor, which spreads samples evenly along the x-axis
    without changing the support.  The first ``burn_in`` iterates are
    discarded.  Fully reproducible for a given seed.
    """
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be >= 0, got {burn_in}")
    rng = np.random.default_rng(seed)
    a = np.array([m.a for m in system.maps])
    picks = rng.choice(system.n, size=burn_in + n_points, p=a / a.sum())
    maps = system.maps
    x, y = system.data.xs[0], system.data.ys[0]
    pts = np.empty((n_points, 2))
    for i, k in enumerate(picks):
        m = maps[k]
        x, y = m.a * x + m.b, m.c * x + m.d * y + m.e
        if i >= burn_in:
            pts[i - burn_in, 0] = x
            pts[i - burn_in, 1] = y
    return AttractorSample(points=pts, seed=seed, burn_in=burn_in,
                           method="chaos-game")


def deterministic_iterate(system: FifSystem, depth: int,
                          samples_per_segment: int,
                          cap: int = DEFAULT_DEPTH_CAP) -> AttractorSample:
    """Images of the discretized data chord under all depth-m compositions.

    The chord joins the first and last data points; each composed map sends
    its endpoints to graph points, and the whole image set converges to the
    graph as the depth grows.  Point count: n**depth * samples_per_segment.
    """
    if samples_per_segment < 2:
        raise ValueError("need at least the 2 segment endpoints")
    a, b, c, d, e = composed_coefficient_arrays(system, depth, cap=cap)
    t = np.linspace(0.0, 1.0, samples_per_segment)
    x0, xn = system.data.xs[0], system.data.xs[-1]
    y0, yn = system.data.ys[0], system.data.ys[-1]
    x = x0 + t * (xn - x0)
    y = y0 + t * (yn - y0)
    xs = a[:, None] * x[None, :] + b[:, None]
    ys = c[:, None] * x[None, :] + d[:, None] * y[None, :] + e[:, None]
    pts = np.stack([xs.ravel(), ys.ravel()], axis=1)
    return AttractorSample(points=pts, seed=None, burn_in=0,
                           method=f"deterministic-depth-{depth}")


def verify_containment(sample: AttractorSample, covering: Covering,
                       tol: float) -> ContainmentReport:
    """Count sample points farther than ``tol`` from the covering.

    ``max_excess`` is the largest covering distance among violating points
    (0.0 when there are none).
    """
    if len(sample.points) == 0:
        return ContainmentReport(checked=0, violations=0, max_excess=0.0)
    dist = covering_distances(sample.points, covering)
    bad = dist > tol
    return ContainmentReport(
        checked=len(dist),
        violations=int(bad.sum()),
        max_excess=float(dist[bad].max()) if bad.any() else 0.0,
    )


def _rhombus_discretization(covering: Covering,
                            boundary_points: int = 64) -> np.ndarray:
    """Center, 4 vertices, and evenly spaced border points of every rhombus."""
    u, v, r = covering.centers_u, covering.centers_v, covering.radii
    theta = covering.theta
    h = r / theta
    per_edge = boundary_points // 4
    # Interior parameters only: the vertices are added separately.
    t = (np.arange(per_edge) + 1.0) / (per_edge + 1.0)
    chunks = [np.stack([u, v], axis=1),
              np.stack([u + r, v], axis=1), np.stack([u - r, v], axis=1),
              np.stack([u, v + h], axis=1), np.stack([u, v - h], axis=1)]
    # Edges right->top, top->left, left->bottom, bottom->right.
    corners = [((u + r, v), (u, v + h)), ((u, v + h), (u - r, v)),
               ((u - r, v), (u, v - h)), ((u, v - h), (u + r, v))]
    for (x1, y1), (x2, y2) in corners:
        ex = x1[:, None] + t[None, :] * (x2 - x1)[:, None]
        ey = y1[:, None] + t[None, :] * (y2 - y1)[:, None]
        chunks.append(np.stack([ex.ravel(), ey.ravel()], axis=1))
    return np.concatenate(chunks, axis=0)


def hausdorff_estimate(covering: Covering, sample: AttractorSample,
                       boundary_points: int = 64) -> float:
    """Two-sided distance estimate between the covering and the sample.

    Returns max(d1, d2) with d1 the farthest sample point from the covering
    (0 when contained) and d2 the farthest covering-discretization point
    from the sample, both in the weighted-L1 metric.  An estimate: d2 is
    evaluated on a finite discretization (center, vertices, and
    ``boundary_points`` border points per rhombus).
    """
    if len(sample.points) == 0:
        raise ValueError("sample must be non-empty")
    theta = covering.theta
    d1 = float(covering_distances(sample.points, covering).max())
    disc = _rhombus_discretization(covering, boundary_points)
    # Weighted L1 becomes Chebyshev after rotating into (x + theta y, x - theta y).
    rot = np.stack([sample.points[:, 0] + theta * sample.points[:, 1],
                    sample.points[:, 0] - theta * sample.points[:, 1]], axis=1)
    tree = cKDTree(rot)
    q = np.stack([disc[:, 0] + theta * disc[:, 1],
                  disc[:, 0] - theta * disc[:, 1]], axis=1)
    d2 = float(tree.query(q, k=1, p=np.inf, workers=-1)[0].max())
    return max(d1, d2)
