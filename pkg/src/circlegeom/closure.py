"""Hull closure on circle families, closed-set enumeration and checks.

Subsets of a ground set of size ``n`` are int bitmasks; bit ``k`` stands for
the ``k``-th member.  Any object with ``n``, ``labels`` and
``closure_mask(mask)`` is a closure system for the generic routines here.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .geometry import (
    DEFAULT_SWEEP,
    CircleFamily,
    GeometryError,
    _as_lines,
    _integer_scale,
    _line_below_envelope,
    _upper_envelope,
    disc_in_hull_family,
    disc_in_hull_pair_collinear,
    end_key,
    planar_hull_deficit,
)

__all__ = [
    "ClosedSetLattice",
    "CircleClosure",
    "IntervalClosure",
    "FunctionClosure",
    "ConvexGeometryReport",
    "SizeBoundError",
    "bits",
    "closure",
    "enumerate_closed_sets",
    "brute_force_closed_sets",
    "verify_convex_geometry",
    "verify_closure_system",
    "anti_exchange_holds",
    "horizontal_interval",
]

DEFAULT_MAX_SIZE = 20


class SizeBoundError(ValueError):
    """The requested enumeration exceeds the configured size bound."""


def bits(mask: int) -> list[int]:
    out, k = [], 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


class _MaskedClosure:
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def to_mask(self, ids: Iterable[str]) -> int:
        index = {lab: k for k, lab in enumerate(self.labels)}
        mask = 0
        for cid in ids:
            if cid not in index:
                raise KeyError(f"{cid!r} is not a member of the ground set")
            mask |= 1 << index[cid]
        return mask

    def to_ids(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[k] for k in bits(mask))

    def closure(self, ids: Iterable[str]) -> frozenset[str]:
        return self.to_ids(self.closure_mask(self.to_mask(ids)))


class CircleClosure(_MaskedClosure):
    """The hull closure ``X -> {C in F : C ⊆ conv(∪X)}`` on a circle family.

    ``method="envelope"`` uses the support-function test (exact for collinear
    families).  ``method="pairwise"`` decides collinear membership by
    searching for two members whose joint hull already contains the circle,
    an independent second route used for cross-checking.
    """

    def __init__(self, family: CircleFamily, method: str = "envelope", sweep: int = DEFAULT_SWEEP):
        if method not in ("envelope", "pairwise"):
            raise ValueError(f"unknown closure method {method!r}")
        if method == "pairwise" and family.kind != "collinear":
            raise GeometryError("pairwise closure is exact only for collinear families")
        self.family = family
        self.labels = family.ids
        self.method = method
        self.sweep = sweep
        self._cache: dict[int, int] = {0: 0}
        if family.kind == "collinear" and method == "envelope":
            self._lines = _as_lines(family.circles, _integer_scale(family.circles))
        if method == "pairwise":
            circles = family.circles
            n = len(circles)
            # pairs[c][a] = mask of b with c ⊆ conv(a ∪ b)
            self._pairs = [
                [sum(1 << b for b in range(n) if disc_in_hull_pair_collinear(circles[c], circles[a], circles[b]))
                 for a in range(n)]
                for c in range(n)
            ]

    def closure_mask(self, mask: int) -> int:
        cached = self._cache.get(mask)
        if cached is not None:
            return cached
        if mask >> self.n:
            raise KeyError("mask refers to members outside the family")
        members = bits(mask)
        out = mask
        outside = [k for k in range(self.n) if not mask >> k & 1]
        if self.method == "pairwise":
            for c in outside:
                row = self._pairs[c]
                if any(row[a] & mask for a in members):
                    out |= 1 << c
        elif self.family.kind == "collinear":
            lines = [self._lines[k] for k in members]
            vertices = _upper_envelope(lines)
            for c in outside:
                if _line_below_envelope(self._lines[c], lines, vertices):
                    out |= 1 << c
        else:
            circles = self.family.circles
            sub = [circles[k] for k in members]
            tol = -float(self.family.tolerance)
            for c in outside:
                if planar_hull_deficit(circles[c], sub, self.sweep) >= tol:
                    out |= 1 << c
        self._cache[mask] = out
        return out


class IntervalClosure(_MaskedClosure):
    """Hull closure on closed intervals of the line ("1-dimensional circles")."""

    def __init__(self, intervals: Sequence[tuple[str, Fraction, Fraction]]):
        self.labels = tuple(str(i) for i, _, _ in intervals)
        self.bounds = [(Fraction(a), Fraction(b)) for _, a, b in intervals]
        if any(a > b for a, b in self.bounds):
            raise ValueError("interval with left end beyond right end")
        if len(set(self.bounds)) != len(self.bounds):
            raise ValueError("duplicate intervals")

    def closure_mask(self, mask: int) -> int:
        if not mask:
            return 0
        members = bits(mask)
        lo = min(self.bounds[k][0] for k in members)
        hi = max(self.bounds[k][1] for k in members)
        return sum(1 << k for k, (a, b) in enumerate(self.bounds) if lo <= a and b <= hi)


class FunctionClosure(_MaskedClosure):
    """Wrap an arbitrary ``mask -> mask`` function, e.g. a corrupted closure."""

    def __init__(self, labels: Sequence[str], fn: Callable[[int], int]):
        self.labels = tuple(labels)
        self._fn = fn

    def closure_mask(self, mask: int) -> int:
        return self._fn(mask)


def closure(family: CircleFamily, ids: Iterable[str]) -> frozenset[str]:
    """Circles of ``family`` lying in the hull of the circles named by ``ids``."""
    ids = list(ids)
    for cid in ids:
        family.index(cid)
    return CircleClosure(family).closure(ids)


# -- closed sets ------------------------------------------------------------------


def _canonical(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=lambda m: (bin(m).count("1"), bits(m))))


@dataclass(frozen=True)
class ClosedSetLattice:
    """Closed sets of a closure system as canonically ordered bitmasks."""

    labels: tuple[str, ...]
    sets: tuple[int, ...]
    _position: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sets", _canonical(self.sets))
        object.__setattr__(self, "_position", {m: k for k, m in enumerate(self.sets)})

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return (self.to_ids(m) for m in self.sets)

    def __contains__(self, ids) -> bool:
        return self.to_mask(ids) in self._position

    def position(self, mask: int) -> int:
        return self._position[mask]

    def to_ids(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[k] for k in bits(mask))

    def to_mask(self, ids: Iterable[str]) -> int:
        index = {lab: k for k, lab in enumerate(self.labels)}
        return sum(1 << index[i] for i in set(ids))

    def set_labels(self) -> list[str]:
        """Readable element names, e.g. ``{}`` or ``{A,B}``."""
        return ["{" + ",".join(self.labels[k] for k in bits(m)) + "}" for m in self.sets]


def _as_system(obj):
    return CircleClosure(obj) if isinstance(obj, CircleFamily) else obj


def enumerate_closed_sets(system, max_size: int = DEFAULT_MAX_SIZE) -> ClosedSetLattice:
    """All closed sets, generated from the empty set by one-element extensions.

    Completeness rests on accessibility of convex geometries: each nonempty
    closed set has a member whose removal leaves a closed set.
    """
    system = _as_system(system)
    if system.n > max_size:
        raise SizeBoundError(f"ground set of size {system.n} exceeds bound {max_size}")
    start = system.closure_mask(0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mask in frontier:
            for k in range(system.n):
                if mask >> k & 1:
                    continue
                closed = system.closure_mask(mask | 1 << k)
                if closed not in seen:
                    seen.add(closed)
                    nxt.append(closed)
        frontier = nxt
    return ClosedSetLattice(tuple(system.labels), tuple(seen))


def brute_force_closed_sets(system, max_size: int = 16) -> ClosedSetLattice:
    """Fixed points of the closure found by closing all ``2**n`` subsets."""
    system = _as_system(system)
    if system.n > max_size:
        raise SizeBoundError(f"ground set of size {system.n} exceeds bound {max_size}")
    fixed = [m for m in range(1 << system.n) if system.closure_mask(m) == m]
    return ClosedSetLattice(tuple(system.labels), tuple(fixed))


# -- verification ------------------------------------------------------------------


@dataclass
class ConvexGeometryReport:
    checks: dict[str, bool]
    witnesses: dict[str, object]
    subsets_checked: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


def anti_exchange_holds(system, closed: int, x: int, y: int) -> bool:
    """The anti-exchange implication for one closed set and two outsiders."""
    if x == y or closed >> x & 1 or closed >> y & 1:
        return True
    cl = system.closure_mask
    return not (cl(closed | 1 << y) >> x & 1 and cl(closed | 1 << x) >> y & 1)


def verify_closure_system(
    system,
    mode: str = "full",
    samples: int = 256,
    seed: int = 0,
    reference=None,
    max_size: int = 16,
) -> ConvexGeometryReport:
    """Check the closure-operator laws and anti-exchange on a closure system.

    Anti-exchange is tested in the form: for closed ``X`` and outsiders
    ``x != y``, ``cl(X+x) == cl(X+y)`` is impossible.  ``mode="full"`` visits
    every subset; ``"sampled"`` draws ``samples`` random subsets.  When a
    ``reference`` system is given, the closures must also agree with it.
    """
    system = _as_system(system)
    n = system.n
    cl = system.closure_mask
    if mode == "full":
        if n > max_size:
            raise SizeBoundError(f"full verification of {n} members exceeds bound {max_size}")
        subsets: Iterable[int] = range(1 << n)
        count = 1 << n
    elif mode == "sampled":
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) if n else 0 for _ in range(samples)]
        count = samples
    else:
        raise ValueError(f"unknown mode {mode!r}")

    checks = {
        "empty_closed": True,
        "extensive": True,
        "monotone": True,
        "idempotent": True,
        "anti_exchange": True,
    }
    witnesses: dict[str, object] = {}
    if reference is not None:
        checks["matches_reference"] = True

    def fail(name, witness):
        if checks[name]:
            checks[name] = False
            witnesses[name] = witness

    if cl(0) != 0:
        fail("empty_closed", system.to_ids(cl(0)))
    for mask in subsets:
        image = cl(mask)
        ids = system.to_ids
        if image & mask != mask:
            fail("extensive", ids(mask))
        if cl(image) != image:
            fail("idempotent", ids(mask))
        if reference is not None and reference.closure_mask(mask) != image:
            fail("matches_reference", {"subset": ids(mask), "got": ids(image),
                                       "expected": ids(reference.closure_mask(mask))})
        outside = [k for k in range(n) if not mask >> k & 1]
        for k in outside:
            if cl(mask | 1 << k) & image != image:
                fail("monotone", {"subset": ids(mask), "added": system.labels[k]})
        if image == mask:
            seen: dict[int, int] = {}
            for k in outside:
                grown = cl(mask | 1 << k)
                if grown in seen:
                    fail("anti_exchange", {"closed": ids(mask), "pair": (system.labels[seen[grown]], system.labels[k])})
                seen[grown] = k
    return ConvexGeometryReport(checks, witnesses, count)


def verify_convex_geometry(
    family: CircleFamily,
    mode: str = "full",
    closure_fn: Callable[[int], int] | None = None,
    **kwargs,
) -> ConvexGeometryReport:
    """Verify that the hull closure of ``family`` is a convex geometry.

    Passing ``closure_fn`` checks that function instead, together with its
    agreement with the geometric definition (a negative control for the
    checker itself).
    """
    if closure_fn is None:
        return verify_closure_system(CircleClosure(family), mode, **kwargs)
    return verify_closure_system(
        FunctionClosure(family.ids, closure_fn), mode, reference=CircleClosure(family), **kwargs
    )


# -- horizontal intervals --------------------------------------------------------


def horizontal_interval(family: CircleFamily, a: str, b: str) -> frozenset[str]:
    """Circles whose left end is not before ``a``'s and right end not after ``b``'s."""
    if family.kind != "collinear":
        raise GeometryError("horizontal intervals are defined for collinear families")
    lo = end_key(family[a], "left")
    hi = end_key(family[b], "right")
    return frozenset(cid for cid, c in family if lo <= end_key(c, "left") and end_key(c, "right") <= hi)


def membership_by_definition(family: CircleFamily, ids: Iterable[str]) -> frozenset[str]:
    """Closure computed member by member through :func:`disc_in_hull_family`."""
    ids = set(ids)
    if not ids:
        return frozenset()
    sub = family.subfamily(ids)
    return frozenset(cid for cid, c in family if cid in ids or disc_in_hull_family(c, sub))
