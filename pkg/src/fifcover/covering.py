"""Rhombus coverings of the interpolant's graph and derived range bounds.

A closed ball of the weighted L1 metric is a rhombus with horizontal
half-diagonal r and vertical half-diagonal r / theta.  Centering one such
ball at the fixed point of every depth-m composed map, with radii driven by
the maps' Lipschitz constants and the spread M of the fixed points, yields a
finite covering of the graph.  The vertical extent of the covering brackets
the interpolant's range.

Two radius conventions are provided:

* ``theorem`` - constants sorted ascending; every non-maximal map k gets
  radius M s_k (1 + s_N) / (1 - s_{N-1} s_N) and the maximal one gets
  M s_N (1 + s_{N-1}) / (1 - s_{N-1} s_N), with M the maximum pairwise
  weighted-L1 distance between fixed points.  This is the guaranteed
  (sound) covering.
* ``appendix-compat`` - mirrors a legacy reference implementation that used
  the maximum pairwise *Euclidean* distance, a per-map growth factor
  (1 + s_k) instead of (1 + s_N), and the constants in original (unsorted)
  order.  Kept so published tables produced by that pipeline can be
  cross-examined; its deviations are flagged in ``mode_notes``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.spatial import QhullError, ConvexHull, cKDTree

from .analysis import (
    DEFAULT_DEPTH_CAP,
    FixedPoint,
    Word,
    composed_coefficient_arrays,
    enumerate_words,
    rho_distance,
)
from .errors import TooFewPoints
from .model import FifSystem, Point

log = logging.getLogger(__name__)

MODE_THEOREM = "theorem"
MODE_APPENDIX = "appendix-compat"

#: How ``appendix-compat`` differs from the guaranteed construction.
APPENDIX_MODE_NOTES = (
    "euclidean-max-distance",
    "per-map-growth-factor",
    "unsorted-constants",
)

# Bytes per rhombus, rough: dataclass + word tuple + floats.
_RHOMBUS_MEM_ESTIMATE = 400


@dataclass(frozen=True)
class Rhombus:
    """One covering element: a closed weighted-L1 ball."""

    center: FixedPoint
    radius: float
    theta: float
    word: Word
    lipschitz: float

    def vertices(self) -> tuple[Point, Point, Point, Point]:
        """The four corners: right, left, top, bottom."""
        u, v = self.center
        r, t = self.radius, self.theta
        return ((u + r, v), (u - r, v), (u, v + r / t), (u, v - r / t))

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        """Closed-ball membership, optionally fattened by ``tol``."""
        return rho_distance(p, self.center, self.theta) <= self.radius + tol


@dataclass(frozen=True)
class RangeBounds:
    """Guaranteed enclosure [lower, upper] of the interpolant's values."""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class Covering:
    """All n**depth rhombi in lexicographic word order, plus derived data."""

    depth: int
    mode: str
    theta: float
    rhombi: tuple[Rhombus, ...]
    diameter_bound: float
    lipschitz_sorted: tuple[float, ...]
    bounds: RangeBounds
    x_span: tuple[float, float]
    mode_notes: tuple[str, ...] = ()
    # Flat copies of the per-rhombus data for vectorized queries.
    centers_u: np.ndarray = field(repr=False, compare=False, default=None)
    centers_v: np.ndarray = field(repr=False, compare=False, default=None)
    radii: np.ndarray = field(repr=False, compare=False, default=None)

    def bounding_box(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Axis-aligned box (x-interval, y-interval) containing the graph."""
        return (self.x_span, (self.bounds.lower, self.bounds.upper))


def max_pairwise_distance(points: Sequence[FixedPoint] | np.ndarray,
                          theta: float) -> float:
    """Largest weighted-L1 distance between any two of the points.

    |du| + theta |dv| = max(|d(u + theta v)|, |d(u - theta v)|), so the
    maximum over all pairs is the larger coordinate spread after rotating
    into (u + theta v, u - theta v).  O(N) instead of O(N^2).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(pts)}")
    p = pts[:, 0] + theta * pts[:, 1]
    q = pts[:, 0] - theta * pts[:, 1]
    return float(max(p.max() - p.min(), q.max() - q.min()))


def _max_euclidean_distance(pts: np.ndarray) -> float:
    """Maximum pairwise Euclidean distance (appendix-compat mode only).

    Realized between convex-hull vertices; falls back to extreme-point
    candidates when the hull is degenerate (collinear points).
    """
    if len(pts) <= 16:
        cand = pts
    else:
        try:
            cand = pts[ConvexHull(pts).vertices]
        except QhullError:
            idx = set()
            for proj in (pts[:, 0], pts[:, 1],
                         pts[:, 0] + pts[:, 1], pts[:, 0] - pts[:, 1]):
                idx.add(int(proj.argmin()))
                idx.add(int(proj.argmax()))
            cand = pts[sorted(idx)]
    diff = cand[:, None, :] - cand[None, :, :]
    return float(np.sqrt((diff**2).sum(-1)).max())


def build_covering(system: FifSystem, depth: int, mode: str = MODE_THEOREM,
                   cap: int = DEFAULT_DEPTH_CAP) -> Covering:
    """Build the depth-m covering of the graph in the requested mode.

    Deterministic: identical inputs yield bit-identical coverings.
    """
    if mode not in (MODE_THEOREM, MODE_APPENDIX):
        raise ValueError(f"unknown mode {mode!r}")
    n = system.n
    count = n**depth
    log.info("building %s covering: %d rhombi, ~%.1f MiB",
             mode, count, count * _RHOMBUS_MEM_ESTIMATE / 2**20)
    a, b, c, d, e = composed_coefficient_arrays(system, depth, cap=cap)
    theta = system.theta
    u = b / (1.0 - a)
    v = b * c / ((1.0 - a) * (1.0 - d)) + e / (1.0 - d)
    s = np.maximum(d, a + theta * np.abs(c))
    if mode == MODE_THEOREM:
        big_m = max_pairwise_distance(np.stack([u, v], axis=1), theta)
        # Stable sort on s alone: equal constants keep lexicographic word
        # order, so the (1 + s_{N-1}) radius goes to the lexicographically
        # largest word among the maximal ones.
        order = np.argsort(s, kind="stable")
        s_max = float(s[order[-1]])
        s_second = float(s[order[-2]])
        denom = 1.0 - s_second * s_max
        radii = big_m * s * (1.0 + s_max) / denom
        radii[order[-1]] = big_m * s_max * (1.0 + s_second) / denom
        notes: tuple[str, ...] = ()
    else:
        big_m = _max_euclidean_distance(np.stack([u, v], axis=1))
        s_max = float(s[-1])
        s_second = float(s[-2])
        denom = 1.0 - s_max * s_second
        radii = s * big_m * (1.0 + s) / denom
        radii[-1] = s_max * big_m * (1.0 + s_second) / denom
        notes = APPENDIX_MODE_NOTES
    assert big_m > 0.0, "fixed points of the first and last map differ in u"
    bounds = RangeBounds(lower=float((v - radii / theta).min()),
                         upper=float((v + radii / theta).max()))
    rhombi = tuple(
        Rhombus(center=FixedPoint(float(u[i]), float(v[i])),
                radius=float(radii[i]), theta=theta, word=word,
                lipschitz=float(s[i]))
        for i, word in enumerate(enumerate_words(n, depth, cap=cap))
    )
    return Covering(
        depth=depth, mode=mode, theta=theta, rhombi=rhombi,
        diameter_bound=big_m,
        lipschitz_sorted=tuple(float(x) for x in np.sort(s, kind="stable")),
        bounds=bounds, x_span=system.data.span, mode_notes=notes,
        centers_u=u, centers_v=v, radii=radii,
    )


def rhombus_vertices(r: Rhombus) -> tuple[Point, Point, Point, Point]:
    return r.vertices()


def rhombus_contains(r: Rhombus, p: Point, tol: float = 0.0) -> bool:
    return r.contains(p, tol)


def range_bounds(c: Covering) -> RangeBounds:
    """Recompute the vertical enclosure from the rhombi.

    Each ball reaches from v - r/theta to v + r/theta; the covering's
    enclosure is the union's extent.
    """
    lo = min(r.center.v - r.radius / r.theta for r in c.rhombi)
    hi = max(r.center.v + r.radius / r.theta for r in c.rhombi)
    return RangeBounds(lo, hi)


def covering_distances(points: np.ndarray, c: Covering) -> np.ndarray:
    """Distance of each point to the covering (0 inside some rhombus).

    The distance of a point to one ball is max(0, rho(p, center) - radius);
    the covering distance is the minimum over balls.  After rotating into
    coordinates where the balls are axis-aligned Chebyshev squares, a k-d
    tree prunes the search: the minimum over the k nearest centers is an
    upper bound on the true minimum, so any point it already places inside a
    ball is settled; the rest are rescanned against all balls.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    theta = c.theta
    ca = c.centers_u + theta * c.centers_v
    cb = c.centers_u - theta * c.centers_v
    pa = pts[:, 0] + theta * pts[:, 1]
    pb = pts[:, 0] - theta * pts[:, 1]
    n = len(ca)
    if n <= 64 or len(pts) * n <= 1 << 22:
        excess = (np.maximum(np.abs(pa[:, None] - ca),
                             np.abs(pb[:, None] - cb)) - c.radii).min(axis=1)
        return np.maximum(excess, 0.0)
    tree = cKDTree(np.stack([ca, cb], axis=1))
    k = min(32, n)
    dist, idx = tree.query(np.stack([pa, pb], axis=1), k=k, p=np.inf,
                           workers=-1)
    nearest_excess = (dist - c.radii[idx]).min(axis=1)
    out = np.maximum(nearest_excess, 0.0)
    unresolved = np.flatnonzero(nearest_excess > 0.0)
    chunk = max(1, (1 << 22) // n)
    for start in range(0, len(unresolved), chunk):
        sel = unresolved[start:start + chunk]
        excess = (np.maximum(np.abs(pa[sel, None] - ca),
                             np.abs(pb[sel, None] - cb)) - c.radii).min(axis=1)
        out[sel] = np.maximum(excess, 0.0)
    return out


def point_to_covering_distance(p: Point, c: Covering) -> float:
    """Distance of a single point to the covering."""
    return float(covering_distances(np.asarray([p], dtype=float), c)[0])


@dataclass(frozen=True)
class ReferenceRow:
    """Per-depth deviation of computed bounds from reference values."""

    mode: str
    depth: int
    computed: RangeBounds
    reference: RangeBounds
    lower_abs_dev: float
    upper_abs_dev: float
    lower_rel_dev: float
    upper_rel_dev: float
    half_width_rel_dev: float
    midpoint_dev: float


def compare_with_reference(
    computed: Mapping[str, Mapping[int, RangeBounds]],
    reference: Mapping[int, tuple[float, float]],
) -> list[ReferenceRow]:
    """Tabulate deviations of computed bounds from reference bounds.

    ``computed`` maps mode name -> depth -> bounds.  Reports only, never
    asserts; rows are ordered by (mode, depth).
    """
    rows: list[ReferenceRow] = []
    for mode in sorted(computed):
        per_depth = computed[mode]
        if set(per_depth) != set(reference):
            raise ValueError(
                f"depth mismatch: computed {sorted(per_depth)} vs "
                f"reference {sorted(reference)}")
        for depth in sorted(per_depth):
            got = per_depth[depth]
            ref = RangeBounds(*reference[depth])
            half_ref = 0.5 * ref.width
            rows.append(ReferenceRow(
                mode=mode, depth=depth, computed=got, reference=ref,
                lower_abs_dev=got.lower - ref.lower,
                upper_abs_dev=got.upper - ref.upper,
                lower_rel_dev=_rel(got.lower - ref.lower, ref.lower),
                upper_rel_dev=_rel(got.upper - ref.upper, ref.upper),
                half_width_rel_dev=_rel(0.5 * got.width - half_ref, half_ref),
                midpoint_dev=got.midpoint - ref.midpoint,
            ))
    return rows


def _rel(dev: float, ref: float) -> float:
    return dev / abs(ref) if ref != 0.0 else float("inf") if dev else 0.0
