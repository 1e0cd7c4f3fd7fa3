"""Metric, fixed points, Lipschitz constants, and word compositions.

The metric is the weighted L1 distance

    rho((u1, v1), (u2, v2)) = |u1 - u2| + theta |v1 - v2|

under which every map of a validated system is a contraction with the exact
constant max(d, a + theta |c|).  Compositions of base maps indexed by a word
(k_1, ..., k_m) are again affine maps of the same shape; their coefficients
follow a right-fold recursion that is far cheaper than re-applying m maps.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DegenerateMap, DepthCapExceeded, LetterOutOfRange
from .model import AffineMap, FifSystem, Point

#: Words are 1-based letter tuples (k_1, ..., k_m), each letter naming a map.
Word = tuple[int, ...]

#: Default ceiling on the number of composed maps materialized at once.
DEFAULT_DEPTH_CAP = 10**7


class FixedPoint(NamedTuple):
    """The unique point left invariant by a contraction map."""

    u: float
    v: float


def rho_distance(p: Point, q: Point, theta: float) -> float:
    """Weighted L1 distance |du| + theta |dv|; theta must be positive."""
    return abs(p[0] - q[0]) + theta * abs(p[1] - q[1])


def fixed_point(m: AffineMap) -> FixedPoint:
    """Closed-form fixed point of an affine map with a < 1 and d < 1.

    Solving f(u, v) = (u, v) coordinate-wise gives u = b / (1 - a) and
    v = b c / ((1 - a)(1 - d)) + e / (1 - d).
    """
    if m.a >= 1.0 or m.d >= 1.0:
        raise DegenerateMap(
            f"no unique fixed point for a={m.a}, d={m.d} (need both < 1)")
    u = m.b / (1.0 - m.a)
    v = m.b * m.c / ((1.0 - m.a) * (1.0 - m.d)) + m.e / (1.0 - m.d)
    return FixedPoint(u, v)


def lipschitz_constant(m: AffineMap, theta: float) -> float:
    """Exact Lipschitz constant of the map under the theta-weighted metric.

    The supremum of rho(f(p), f(q)) / rho(p, q) equals
    max(d, a + theta |c|): the first branch is approached by vertical
    displacements, the second is attained by horizontal ones.
    """
    return max(m.d, m.a + theta * abs(m.c))


def _check_word(system: FifSystem, word: Word) -> None:
    if not word:
        raise LetterOutOfRange("word must have at least one letter")
    for k in word:
        if not 1 <= k <= system.n:
            raise LetterOutOfRange(
                f"letter {k} outside 1..{system.n}")


def compose_word(system: FifSystem, word: Word) -> AffineMap:
    """Coefficients of f_{k_1} o ... o f_{k_m} via the right-fold recursion.

    The accumulator starts at the last letter's map and each earlier letter
    is folded in as the new outermost map.  The association order is fixed so
    results are reproducible bit-for-bit.
    """
    _check_word(system, word)
    acc = system.maps[word[-1] - 1]
    for k in reversed(word[:-1]):
        f = system.maps[k - 1]
        acc = AffineMap(
            a=f.a * acc.a,
            b=f.a * acc.b + f.b,
            c=f.c * acc.a + f.d * acc.c,
            d=f.d * acc.d,
            e=f.c * acc.b + f.d * acc.e + f.e,
        )
    return acc


def enumerate_words(n: int, depth: int,
                    cap: int = DEFAULT_DEPTH_CAP) -> Iterator[Word]:
    """All n**depth words of the given depth in lexicographic order."""
    if n < 2:
        raise LetterOutOfRange(f"need at least 2 maps, got n={n}")
    if depth < 1:
        raise DepthCapExceeded(f"depth must be >= 1, got {depth}")
    count = n**depth
    if count > cap:
        raise DepthCapExceeded(
            f"{n}^{depth} = {count} words exceed the cap of {cap}")
    return product(range(1, n + 1), repeat=depth)


def composed_coefficient_arrays(
    system: FifSystem, depth: int, cap: int = DEFAULT_DEPTH_CAP
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Coefficient arrays (a, b, c, d, e) of all n**depth composed maps.

    Entry i belongs to the i-th word in lexicographic order.  Evaluates the
    same recursion as :func:`compose_word` level by level (all words of depth
    j share their suffix blocks), with the identical association order, so
    each entry matches the scalar path bit-for-bit.
    """
    n = system.n
    if depth < 1:
        raise DepthCapExceeded(f"depth must be >= 1, got {depth}")
    if n**depth > cap:
        raise DepthCapExceeded(
            f"{n}^{depth} = {n**depth} composed maps exceed the cap of {cap}")
    a0 = np.array([m.a for m in system.maps])
    b0 = np.array([m.b for m in system.maps])
    c0 = np.array([m.c for m in system.maps])
    d0 = np.array([m.d for m in system.maps])
    e0 = np.array([m.e for m in system.maps])
    a, b, c, d, e = a0, b0, c0, d0, e0
    for _ in range(depth - 1):
        block = len(a)
        ah, bh = np.repeat(a0, block), np.repeat(b0, block)
        ch, dh, eh = np.repeat(c0, block), np.repeat(d0, block), np.repeat(e0, block)
        at, bt = np.tile(a, n), np.tile(b, n)
        ct, dt, et = np.tile(c, n), np.tile(d, n), np.tile(e, n)
        a = ah * at
        b = ah * bt + bh
        c = ch * at + dh * ct
        d = dh * dt
        e = ch * bt + dh * et + eh
    return a, b, c, d, e
