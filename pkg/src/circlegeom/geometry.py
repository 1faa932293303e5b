"""Exact and tolerance-controlled predicates on circles.

Collinear circles (centers on the x axis) are handled in exact rational
arithmetic.  Planar circles go through a floating-point support-function
test whose answers are qualified by a tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "Circle",
    "CircleFamily",
    "GeometryError",
    "as_rational",
    "end_key",
    "end_lt",
    "disc_contains_disc",
    "disc_in_hull_pair_collinear",
    "disc_in_hull_family",
    "is_separated",
    "is_concave",
    "is_concave_by_points",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = Fraction(1, 10**9)
DEFAULT_SWEEP = 64


class GeometryError(ValueError):
    """Raised when a predicate is applied outside its domain."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, floats and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, np.floating):
        return Fraction(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class Circle:
    """Circle with center ``(x, y)`` and radius ``r >= 0``.

    A circle centered on the x axis is a collinear circle; its leftmost and
    rightmost points and its left/right ends are available as properties.
    """

    x: Fraction
    y: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("x", "y", "r"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.r < 0:
            raise ValueError(f"negative radius {self.r}")

    @classmethod
    def on_axis(cls, x, r) -> "Circle":
        return cls(x, 0, r)

    @property
    def collinear(self) -> bool:
        return self.y == 0

    @property
    def lmpt(self) -> Fraction:
        return self.x - self.r

    @property
    def rmpt(self) -> Fraction:
        return self.x + self.r

    @property
    def left_end(self) -> tuple[Fraction, Fraction]:
        return (self.lmpt, -self.r)

    @property
    def right_end(self) -> tuple[Fraction, Fraction]:
        return (self.rmpt, self.r)

    def mirrored(self) -> "Circle":
        """Reflection through the y axis."""
        return Circle(-self.x, self.y, self.r)

    def __repr__(self) -> str:
        if self.y == 0:
            return f"Circle(x={self.x}, r={self.r})"
        return f"Circle(x={self.x}, y={self.y}, r={self.r})"


@dataclass(frozen=True)
class CircleFamily:
    """Ordered, id-labelled finite set of circles.

    ``kind`` is ``"collinear"`` (every center on the x axis, exact
    predicates) or ``"planar"`` (tolerance-qualified predicates).
    """

    members: tuple[tuple[str, Circle], ...]
    kind: str = "collinear"
    tolerance: Fraction = DEFAULT_TOLERANCE
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        members = tuple((str(i), c if isinstance(c, Circle) else Circle(*c)) for i, c in self.members)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "tolerance", as_rational(self.tolerance))
        if self.kind not in ("collinear", "planar"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        index = {}
        seen = {}
        for pos, (cid, circle) in enumerate(members):
            if cid in index:
                raise ValueError(f"duplicate circle id {cid!r}")
            if circle in seen:
                raise ValueError(f"circles {seen[circle]!r} and {cid!r} coincide")
            if self.kind == "collinear" and not circle.collinear:
                raise ValueError(f"circle {cid!r} is off the x axis in a collinear family")
            index[cid] = pos
            seen[circle] = cid
        object.__setattr__(self, "_index", index)

    @classmethod
    def collinear(cls, circles, ids: Sequence[str] | None = None) -> "CircleFamily":
        """Build a collinear family from ``(x, r)`` pairs, Circles or a mapping id -> circle."""
        return cls(_labelled(circles, ids, lambda c: Circle.on_axis(*c)), "collinear")

    @classmethod
    def planar(cls, circles, ids: Sequence[str] | None = None, tolerance=DEFAULT_TOLERANCE) -> "CircleFamily":
        """Build a planar family from ``(x, y, r)`` triples, Circles or a mapping."""
        return cls(_labelled(circles, ids, lambda c: Circle(*c)), "planar", tolerance)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[tuple[str, Circle]]:
        return iter(self.members)

    def __getitem__(self, cid: str) -> Circle:
        return self.members[self._index[cid]][1]

    def __contains__(self, cid) -> bool:
        return cid in self._index

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.members)

    @property
    def circles(self) -> tuple[Circle, ...]:
        return tuple(c for _, c in self.members)

    def index(self, cid: str) -> int:
        try:
            return self._index[cid]
        except KeyError:
            raise KeyError(f"circle id {cid!r} is not in the family") from None

    def subfamily(self, ids: Iterable[str]) -> "CircleFamily":
        keep = set(ids)
        return CircleFamily(tuple(m for m in self.members if m[0] in keep), self.kind, self.tolerance)

    def with_member(self, cid: str, circle: Circle) -> "CircleFamily":
        return CircleFamily(self.members + ((cid, circle),), self.kind, self.tolerance)

    def mirrored(self) -> "CircleFamily":
        return CircleFamily(tuple((i, c.mirrored()) for i, c in self.members), self.kind, self.tolerance)

    def as_planar(self, tolerance=None) -> "CircleFamily":
        tol = self.tolerance if tolerance is None else tolerance
        return CircleFamily(self.members, "planar", tol)


def _labelled(circles, ids, make):
    if isinstance(circles, Mapping):
        items = list(circles.items())
    else:
        circles = list(circles)
        if ids is None:
            ids = [_default_id(k) for k in range(len(circles))]
        items = list(zip(ids, circles))
    return tuple((cid, c if isinstance(c, Circle) else make(c)) for cid, c in items)


def _default_id(k: int) -> str:
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    return letters[k] if k < 26 else f"C{k}"


# -- end orders -------------------------------------------------------------


def end_key(c: Circle, side: str) -> tuple[Fraction, Fraction]:
    """Lexicographic key realizing the order of left or right ends."""
    if side == "left":
        return c.left_end
    if side == "right":
        return c.right_end
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def end_lt(a: Circle, b: Circle, side: str) -> bool:
    return end_key(a, side) < end_key(b, side)


def _end_le(a: Circle, b: Circle, side: str) -> bool:
    return end_key(a, side) <= end_key(b, side)


# -- containment -------------------------------------------------------------


def disc_contains_disc(outer: Circle, inner: Circle) -> bool:
    """True iff the disc of ``inner`` lies in the disc of ``outer``.

    Exact in both modes: ``d + r_in <= r_out`` is decided on squared forms.
    """
    slack = outer.r - inner.r
    if slack < 0:
        return False
    if outer.y == inner.y:
        return abs(outer.x - inner.x) <= slack
    dx, dy = outer.x - inner.x, outer.y - inner.y
    return dx * dx + dy * dy <= slack * slack


def _feasible_t(alpha, beta, lo, hi):
    """Intersect ``[lo, hi]`` with ``{t : alpha + beta*t >= 0}``."""
    if beta == 0:
        return (lo, hi) if alpha >= 0 else (1, 0)
    root = Fraction(-alpha) / beta
    if beta > 0:
        return (max(lo, root), hi)
    return (lo, min(hi, root))


def disc_in_hull_pair_collinear(c: Circle, a: Circle, b: Circle) -> bool:
    """Exact test ``c ⊆ conv(a ∪ b)`` for collinear circles.

    The hull of two discs is the union over ``t in [0, 1]`` of the discs with
    center ``(1-t)a + tb`` and radius ``(1-t)r_a + t r_b``; containment in one
    of them is two linear inequalities in ``t``.
    """
    if not (c.collinear and a.collinear and b.collinear):
        raise GeometryError("pairwise hull test requires collinear circles")
    dx, dr = b.x - a.x, b.r - a.r
    lo, hi = Fraction(0), Fraction(1)
    lo, hi = _feasible_t(a.r - c.r - c.x + a.x, dr + dx, lo, hi)
    if lo > hi:
        return False
    lo, hi = _feasible_t(a.r - c.r + c.x - a.x, dr - dx, lo, hi)
    return lo <= hi


# -- collinear support-function envelope ---------------------------------------


def _upper_envelope(lines):
    """Breakpoints of ``u -> max(m*u + b)`` strictly inside ``(-1, 1)``.

    ``lines`` are ``(m, b)`` pairs of exact numbers.  Returns ``(p, q, m, b)``
    with ``q > 0``: at ``u = p/q`` the envelope is attained by line ``(m, b)``.
    Only multiplications are used, so integer input stays integer.
    """
    best = {}
    for m, b in lines:
        if m not in best or b > best[m]:
            best[m] = b
    hull = []
    for m, b in sorted(best.items()):
        while len(hull) >= 2:
            (m1, b1), (m2, b2) = hull[-2], hull[-1]
            # middle line is dominated if x(1,3) <= x(1,2)
            if (b1 - b) * (m2 - m1) <= (b1 - b2) * (m - m1):
                hull.pop()
            else:
                break
        hull.append((m, b))
    out = []
    for (m1, b1), (m2, b2) in zip(hull, hull[1:]):
        p, q = b1 - b2, m2 - m1
        if -q < p < q:
            out.append((p, q, m1, b1))
    return out


def _line_below_envelope(query, lines, vertices) -> bool:
    mc, bc = query
    if max(m + b for m, b in lines) < mc + bc:
        return False
    if max(b - m for m, b in lines) < bc - mc:
        return False
    return all((m - mc) * p + (b - bc) * q >= 0 for p, q, m, b in vertices)


def _integer_scale(circles: Iterable[Circle]) -> int:
    return reduce(math.lcm, (v.denominator for c in circles for v in (c.x, c.r)), 1)


def _as_lines(circles, scale):
    return [(int(c.x * scale), int(c.r * scale)) for c in circles]


def collinear_hull_contains(query: Circle, members: Sequence[Circle]) -> bool:
    """Exact envelope test for collinear circles (no validation)."""
    scale = _integer_scale([query, *members])
    lines = _as_lines(members, scale)
    (q,) = _as_lines([query], scale)
    return _line_below_envelope(q, lines, _upper_envelope(lines))


# -- planar support-function test ---------------------------------------------


def planar_hull_deficit(c: Circle, members: Sequence[Circle], sweep: int = DEFAULT_SWEEP) -> float:
    """Minimum over directions of ``max_i h_i - h_c`` in floating point.

    ``h`` is the support function ``cx cos θ + cy sin θ + r``.  The minimum
    of a maximum of sinusoids is attained at a pairwise crossing or at a
    minimum of a single sinusoid; ``sweep`` extra uniform angles guard the
    enumeration.
    """
    arr = np.array([[float(m.x), float(m.y), float(m.r)] for m in members])
    A = arr[:, 0] - float(c.x)
    B = arr[:, 1] - float(c.y)
    D = arr[:, 2] - float(c.r)
    angles = [np.arctan2(B, A) + np.pi]
    if len(members) > 1:
        i, j = np.triu_indices(len(members), 1)
        dA, dB, dD = A[i] - A[j], B[i] - B[j], D[i] - D[j]
        rho = np.hypot(dA, dB)
        ok = (rho > 0) & (np.abs(dD) <= rho)
        phi = np.arctan2(dB[ok], dA[ok])
        delta = np.arccos(np.clip(-dD[ok] / rho[ok], -1.0, 1.0))
        angles += [phi + delta, phi - delta]
    if sweep:
        angles.append(np.linspace(0.0, 2 * np.pi, sweep, endpoint=False))
    theta = np.concatenate(angles)
    values = np.outer(np.cos(theta), A) + np.outer(np.sin(theta), B) + D
    return float(values.max(axis=1).min())


def disc_in_hull_family(c: Circle, family: CircleFamily, sweep: int = DEFAULT_SWEEP) -> bool:
    """True iff the disc of ``c`` lies in the convex hull of the family.

    Collinear families are decided exactly; planar families within
    ``family.tolerance``.
    """
    if len(family) == 0:
        raise GeometryError("hull of empty family is empty")
    members = family.circles
    if family.kind == "collinear":
        if not c.collinear:
            raise GeometryError("query circle must be collinear for a collinear family")
        return collinear_hull_contains(c, members)
    return planar_hull_deficit(c, members, sweep) >= -float(family.tolerance)


# -- family predicates ----------------------------------------------------------


def _require_collinear(family: CircleFamily, what: str):
    if family.kind != "collinear":
        raise GeometryError(f"{what} is defined for collinear families")


def is_separated(family: CircleFamily) -> bool:
    """Every pair of distinct members has four distinct endpoint values."""
    _require_collinear(family, "separated")
    circles = family.circles
    for i, a in enumerate(circles):
        for b in circles[i + 1:]:
            if len({a.lmpt, a.rmpt, b.lmpt, b.rmpt}) != 4:
                return False
    return True


@dataclass(frozen=True)
class ConcavityVerdict:
    holds: bool
    witness: tuple[str, str, str] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_concave(family: CircleFamily) -> ConcavityVerdict:
    """Check concavity over all ordered triples, repeated members included.

    Whenever the left end of ``C1`` is at or before that of ``C2`` and the
    right end of ``C2`` at or before that of ``C3``, ``C2`` must lie in the
    hull of ``C1`` and ``C3``.  The witness is the first failing id triple.
    """
    _require_collinear(family, "concavity")
    members = family.members
    for id1, c1 in members:
        for id2, c2 in members:
            if not _end_le(c1, c2, "left"):
                continue
            for id3, c3 in members:
                if _end_le(c2, c3, "right") and not disc_in_hull_pair_collinear(c2, c1, c3):
                    return ConcavityVerdict(False, (id1, id2, id3))
    return ConcavityVerdict(True)


def is_concave_by_points(family: CircleFamily) -> ConcavityVerdict:
    """Concavity via strict leftmost/rightmost point comparisons.

    Agrees with :func:`is_concave` on separated families.
    """
    _require_collinear(family, "concavity")
    members = family.members
    for id1, c1 in members:
        for id2, c2 in members:
            if not c1.lmpt < c2.lmpt:
                continue
            for id3, c3 in members:
                if c2.rmpt < c3.rmpt and not disc_in_hull_pair_collinear(c2, c1, c3):
                    return ConcavityVerdict(False, (id1, id2, id3))
    return ConcavityVerdict(True)
