"""Interpolation input and the affine IFS built from it.

Given data points (x_0, y_0), ..., (x_n, y_n) with strictly increasing
abscissas and vertical scaling factors d_1, ..., d_n in [0, 1), the system
consists of n affine plane maps

    f_k(x, y) = (a_k x + b_k, c_k x + d_k y + e_k)

whose coefficients are chosen so that f_k sends the whole data span onto the
k-th subinterval and hits the data points at its ends.  Together with a metric
weight theta (see :func:`fifcover.analysis.rho_distance`) every map becomes a
contraction, and the attractor of the system is the graph of a continuous
interpolant through the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    LengthMismatch,
    NonFiniteValue,
    NonIncreasingAbscissas,
    ScalingOutOfRange,
    TooFewPoints,
)

Point = tuple[float, float]


@dataclass(frozen=True)
class InterpolationData:
    """Data points and vertical scaling factors, one factor per subinterval."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    ds: tuple[float, ...]
    name: str | None = None

    @property
    def n(self) -> int:
        """Number of subintervals (= number of maps)."""
        return len(self.xs) - 1

    @property
    def span(self) -> tuple[float, float]:
        return self.xs[0], self.xs[-1]

    @staticmethod
    def create(xs, ys, ds, name: str | None = None) -> "InterpolationData":
        """Build and validate in one step."""
        return validate_data(
            InterpolationData(tuple(map(float, xs)), tuple(map(float, ys)),
                              tuple(map(float, ds)), name)
        )


@dataclass(frozen=True)
class AffineMap:
    """One affine plane map (x, y) -> (a x + b, c x + d y + e).

    Also represents compositions of base maps, whose coefficients have the
    same shape (see :func:`fifcover.analysis.compose_word`).
    """

    a: float
    b: float
    c: float
    d: float
    e: float

    def apply(self, p: Point) -> Point:
        x, y = p
        return (self.a * x + self.b, self.c * x + self.d * y + self.e)


@dataclass(frozen=True)
class FifSystem:
    """A validated set of base maps plus the metric weight theta.

    ``maps[k - 1]`` is the map for the k-th subinterval; the 1-based index k
    is the letter alphabet for words over the system.
    """

    maps: tuple[AffineMap, ...]
    theta: float
    data: InterpolationData

    @property
    def n(self) -> int:
        return len(self.maps)


def validate_data(raw: InterpolationData) -> InterpolationData:
    """Check all invariants of the input; return it unchanged if they hold.

    Raises a specific :class:`fifcover.errors.InputError` subclass naming the
    first violated invariant.
    """
    xs, ys, ds = raw.xs, raw.ys, raw.ds
    if len(xs) != len(ys):
        raise LengthMismatch(
            f"got {len(xs)} abscissas but {len(ys)} ordinates")
    if len(xs) < 3:
        raise TooFewPoints(
            f"need at least 3 data points (2 subintervals), got {len(xs)}")
    if len(ds) != len(xs) - 1:
        raise LengthMismatch(
            f"expected {len(xs) - 1} scaling factors, got {len(ds)}")
    for label, values in (("x", xs), ("y", ys), ("d", ds)):
        for i, v in enumerate(values):
            if not math.isfinite(v):
                raise NonFiniteValue(f"{label}[{i}] = {v!r} is not finite")
    for i in range(1, len(xs)):
        if not xs[i - 1] < xs[i]:
            raise NonIncreasingAbscissas(
                f"x[{i - 1}] = {xs[i - 1]} must be < x[{i}] = {xs[i]}")
    for i, d in enumerate(ds):
        if not (0.0 <= d < 1.0):
            raise ScalingOutOfRange(
                f"d[{i}] = {d} must lie in [0, 1)")
    return raw


def build_system(data: InterpolationData) -> FifSystem:
    """Construct the base maps and metric weight from validated data.

    Pure and deterministic: the same data always yields the identical system.
    """
    data = validate_data(data)
    xs, ys, ds = data.xs, data.ys, data.ds
    x0, xn = xs[0], xs[-1]
    y0, yn = ys[0], ys[-1]
    width = xn - x0
    maps = []
    for k in range(1, len(xs)):
        d = ds[k - 1]
        a = (xs[k] - xs[k - 1]) / width
        b = (xn * xs[k - 1] - x0 * xs[k]) / width
        c = (ys[k] - ys[k - 1]) / width - d * (yn - y0) / width
        e = (xn * ys[k - 1] - x0 * ys[k]) / width - d * (xn * y0 - x0 * yn) / width
        maps.append(AffineMap(a, b, c, d, e))
    # The weight rule branches on exact zero: only when every shear
    # coefficient vanishes does the plain L1 metric already contract.
    max_abs_c = max(abs(m.c) for m in maps)
    if max_abs_c == 0.0:
        theta = 1.0
    else:
        theta = (1.0 - max(m.a for m in maps)) / (2.0 * max_abs_c)
    return FifSystem(tuple(maps), theta, data)


def apply_map(m: AffineMap, p: Point) -> Point:
    """Apply one affine map to a point of the plane."""
    return m.apply(p)
