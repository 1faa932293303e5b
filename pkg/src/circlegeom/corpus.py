"""Generators for test corpora: lattices, random circle families and the
standard example families."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .closure import ClosedSetLattice, bits
from .geometry import Circle, CircleFamily
from .isomorphism import invariant, is_isomorphic
from .lattice import FiniteLattice, build_from_closed_sets, is_dually_slim
from .synthesis import concavity_repair

__all__ = [
    "convex_geometry_lattices",
    "dually_slim_corpus",
    "two_order_lattice",
    "random_two_order_lattice",
    "IsoClasses",
    "random_collinear_family",
    "random_planar_family",
    "random_concave_family",
    "tangent_family",
    "polygon_family",
    "triangle_with_barycenter",
    "concentric_family",
]


class IsoClasses:
    """Collects lattices, keeping one representative per isomorphism class."""

    def __init__(self):
        self._buckets: dict[tuple, list] = {}
        self.items: list = []

    def add(self, L: FiniteLattice, payload=None) -> bool:
        bucket = self._buckets.setdefault(invariant(L), [])
        for M, _ in bucket:
            if is_isomorphic(L, M):
                return False
        bucket.append((L, payload))
        self.items.append((L, payload))
        return True

    def __len__(self) -> int:
        return len(self.items)

    def lattices(self) -> list[FiniteLattice]:
        return [L for L, _ in self.items]


# -- lattices --------------------------------------------------------------------


def _is_convex_geometry(family: set[int], full: int) -> bool:
    for a in family:
        for b in family:
            if a & b not in family:
                return False
    for a in family:
        if a != full and not any((a | 1 << k) in family for k in bits(full & ~a)):
            return False
    return True


def convex_geometry_lattices(max_size: int) -> Iterator[FiniteLattice]:
    """Closed-set lattices of all convex geometries with at most
    ``max_size`` closed sets, up to isomorphism.

    Every convex geometry on ``n`` points has a maximal chain of closed sets
    adding one point at a time; relabelling makes it ``∅ ⊂ {0} ⊂ {0,1} ⊂ …``.
    The remaining closed sets are chosen from the other subsets, and a
    family is kept when it is intersection-closed and every proper closed
    set has a one-point closed extension.
    """
    classes = IsoClasses()
    for n in range(0, max_size):
        full = (1 << n) - 1
        base = [(1 << k) - 1 for k in range(n + 1)]
        others = [m for m in range(1 << n) if m not in set(base)]
        for extra_count in range(0, max_size - n):
            for extra in combinations(others, extra_count):
                family = set(base) | set(extra)
                if not _is_convex_geometry(family, full):
                    continue
                L = build_from_closed_sets(ClosedSetLattice(tuple(str(k) for k in range(n)), tuple(family)))
                if classes.add(L):
                    yield L


def dually_slim_corpus(max_size: int = 10) -> list[FiniteLattice]:
    """Dually slim convex-geometry lattices with at most ``max_size`` elements."""
    return [L for L in convex_geometry_lattices(max_size) if is_dually_slim(L)]


def two_order_lattice(first: list[int], second: list[int]) -> FiniteLattice:
    """Closed sets ``P ∩ Q`` with ``P``, ``Q`` prefixes of two orderings of
    the same points: a convex geometry of convex dimension at most 2."""
    n = len(first)
    pre1 = [sum(1 << x for x in first[:k]) for k in range(n + 1)]
    pre2 = [sum(1 << x for x in second[:k]) for k in range(n + 1)]
    sets = {a & b for a in pre1 for b in pre2}
    return build_from_closed_sets(ClosedSetLattice(tuple(str(k) for k in range(n)), tuple(sets)))


def random_two_order_lattice(rng: random.Random, max_size: int = 14, max_points: int = 7) -> FiniteLattice:
    """Random convex dimension <= 2 lattice with at most ``max_size`` elements."""
    while True:
        n = rng.randint(1, max_points)
        first = list(range(n))
        second = first[:]
        rng.shuffle(second)
        L = two_order_lattice(first, second)
        if L.n <= max_size:
            return L


# -- circle families --------------------------------------------------------------


def _grid_value(rng: random.Random, lo: int, hi: int, denominator: int) -> Fraction:
    return Fraction(rng.randint(lo * denominator, hi * denominator), denominator)


def random_collinear_family(rng: random.Random, size: int, span: int = 10, max_radius: int = 5,
                            denominator: int = 2) -> CircleFamily:
    """Distinct collinear circles on a rational grid."""
    seen = {}
    while len(seen) < size:
        c = Circle.on_axis(_grid_value(rng, -span, span, denominator), _grid_value(rng, 0, max_radius, denominator))
        seen.setdefault(c, None)
    return CircleFamily.collinear(list(seen))


def random_planar_family(rng: random.Random, size: int, span: int = 6, max_radius: int = 3,
                         denominator: int = 1, point_ratio: float = 0.3) -> CircleFamily:
    """Distinct planar circles on a rational grid; some have radius 0."""
    seen = {}
    while len(seen) < size:
        r = Fraction(0) if rng.random() < point_ratio else _grid_value(rng, 0, max_radius, denominator)
        c = Circle(_grid_value(rng, -span, span, denominator), _grid_value(rng, -span, span, denominator), r)
        seen.setdefault(c, None)
    return CircleFamily.planar(list(seen))


def random_concave_family(rng: random.Random, size: int) -> CircleFamily:
    """Concave collinear family grown circle by circle.

    Each new circle gets a random leftmost point and a rightmost point past
    every existing one, then is enlarged until the family stays concave.
    Some seeds start from a few concentric circles.
    """
    circles: list[Circle] = []
    if rng.random() < 0.3:
        for k in range(rng.randint(1, min(3, size))):
            circles.append(Circle.on_axis(0, k + 1))
    while len(circles) < size:
        if not circles:
            circles.append(Circle.on_axis(0, rng.randint(1, 3)))
            continue
        taken = {v for c in circles for v in (c.lmpt, c.rmpt)}
        lo = min(taken) - 2
        hi = max(taken)
        lmpt = Fraction(rng.randint(int(lo) * 2, int(hi) * 2), 2)
        while lmpt in taken:
            lmpt += Fraction(1, 4)
        rmpt = max(hi, lmpt) + rng.randint(1, 3)
        c = Circle.on_axis((lmpt + rmpt) / 2, (rmpt - lmpt) / 2)
        c, _ = concavity_repair(circles, c)
        circles.append(c)
    return CircleFamily.collinear(circles)


def tangent_family(n: int) -> CircleFamily:
    """``n`` collinear circles internally tangent to one circle ``K``.

    ``K`` is centered at ``(0, 1)``.  Centers ``x = (1 - t²) / 2t`` are at
    rational distance ``(1 + t²) / 2t`` from ``K``'s center, so each radius
    ``R - d`` is rational.  Closed sets form the boolean lattice on ``n``.
    """
    ts = [Fraction(1)]
    k = 2
    while len(ts) < n:
        ts += [Fraction(1, k), Fraction(k)]
        k += 1
    ts = ts[:n]
    xs = [(1 - t * t) / (2 * t) for t in ts]
    ds = [(1 + t * t) / (2 * t) for t in ts]
    R = max(ds) + 1
    return CircleFamily.collinear(sorted((x, R - d) for x, d in zip(xs, ds)))


def _rational(value: float, limit: int = 10**9) -> Fraction:
    return Fraction(value).limit_denominator(limit)


def polygon_family(n: int, small_radius=Fraction(1, 100), tolerance=Fraction(1, 10**9)) -> CircleFamily:
    """Inscribed circle of a regular ``(n+1)``-gon (circumradius 1) and small
    circles at its vertices; coordinates are rational approximations."""
    k = n + 1
    circles = [(0, 0, _rational(math.cos(math.pi / k)))]
    ids = ["K"]
    for i in range(k):
        a = 2 * math.pi * i / k + math.pi / 2
        circles.append((_rational(math.cos(a)), _rational(math.sin(a)), Fraction(small_radius)))
        ids.append(f"V{i}")
    return CircleFamily.planar(circles, ids, tolerance)


def triangle_with_barycenter() -> CircleFamily:
    """Three non-collinear points and their barycenter, as radius-0 circles."""
    return CircleFamily.planar([(0, 0, 0), (6, 0, 0), (0, 6, 0), (2, 2, 0)], ["P", "Q", "R", "G"])


def concentric_family(radii=(1, 2, 3)) -> CircleFamily:
    return CircleFamily.collinear([(0, r) for r in radii])
