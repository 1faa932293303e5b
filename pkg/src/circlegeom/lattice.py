"""Finite lattices and the analytics used on closed-set lattices.

A :class:`FiniteLattice` is stored as a dense boolean ``leq`` matrix over
labelled elements; covers, joins and meets are derived from it once.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .closure import CircleClosure, ClosedSetLattice, SizeBoundError, _MaskedClosure, bits, enumerate_closed_sets

__all__ = [
    "FiniteLattice",
    "LatticeError",
    "Verdict",
    "WidthResult",
    "ProbeEntry",
    "JirClosure",
    "build_from_closed_sets",
    "lattice_of_family",
    "width",
    "convex_dimension",
    "is_lower_semimodular",
    "is_meet_distributive",
    "has_cover_preserving_m3",
    "is_dually_slim",
    "caratheodory",
    "structural_probe",
    "maximal_doubly_irreducibles",
    "peelable_elements",
    "horizontal_betweenness_check",
    "join_extension_map",
    "chain_lattice",
    "boolean_lattice",
    "m3_lattice",
    "n5_lattice",
]


class LatticeError(ValueError):
    """Input does not describe a finite lattice."""


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with an optional witness; truthy iff ``holds``."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


class FiniteLattice:
    """Finite lattice given by labels and a reflexive order matrix.

    ``leq[i, j]`` is true iff element ``i`` is below element ``j``.  The
    constructor validates the partial order and existence of all joins and
    meets unless ``check=False``.
    """

    def __init__(self, labels: Sequence, leq, check: bool = True):
        self.labels = tuple(str(x) for x in labels)
        leq = np.array(leq, dtype=bool)
        n = len(self.labels)
        if leq.shape != (n, n):
            raise LatticeError(f"order matrix shape {leq.shape} does not match {n} labels")
        if n == 0:
            raise LatticeError("a lattice has at least one element")
        if len(set(self.labels)) != n:
            raise LatticeError("element labels must be unique")
        leq.setflags(write=False)
        self.leq = leq
        self.n = n
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        if check:
            self._validate()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_covers(cls, labels: Sequence, covers: Iterable[tuple]) -> "FiniteLattice":
        """Lattice whose order is the reflexive-transitive closure of ``covers``."""
        labels = [str(x) for x in labels]
        index = {lab: k for k, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise LatticeError("element labels must be unique")
        n = len(labels)
        rel = np.eye(n, dtype=bool)
        for lo, up in covers:
            try:
                rel[index[str(lo)], index[str(up)]] = True
            except KeyError as exc:
                raise LatticeError(f"cover mentions unknown element {exc.args[0]!r}") from None
        leq = _transitive_closure(rel)
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise LatticeError("cover relation has a cycle")
        return cls(labels, leq)

    @classmethod
    def from_leq(cls, labels: Sequence, leq_fn) -> "FiniteLattice":
        labels = list(labels)
        return cls([str(x) for x in labels], [[leq_fn(a, b) for b in labels] for a in labels])

    def _validate(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise LatticeError("order is not reflexive")
        if (leq & leq.T & ~np.eye(self.n, dtype=bool)).any():
            raise LatticeError("order is not antisymmetric")
        li = leq.astype(np.int32)
        if ((li @ li > 0) & ~leq).any():
            raise LatticeError("order is not transitive")
        if not leq.all(axis=1).any():
            raise LatticeError("no bottom element")
        if not leq.all(axis=0).any():
            raise LatticeError("no top element")
        _ = self.join_table, self.meet_table

    # -- basic structure ---------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, jir={len(self.jir)}, mir={len(self.mir)})"

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of the lattice") from None

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    @cached_property
    def lt(self) -> np.ndarray:
        return self.leq & ~np.eye(self.n, dtype=bool)

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[i, j]`` iff ``j`` covers ``i``."""
        li = self.lt.astype(np.int32)
        return self.lt & ~(li @ li > 0)

    def lower_covers(self, i: int) -> list[int]:
        return np.flatnonzero(self.covers[:, i]).tolist()

    def upper_covers(self, i: int) -> list[int]:
        return np.flatnonzero(self.covers[i]).tolist()

    def cover_pairs(self) -> list[tuple[int, int]]:
        lo, up = np.nonzero(self.covers)
        return list(zip(lo.tolist(), up.tolist()))

    def ideal(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[:, i]).tolist()

    def filter(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[i]).tolist()

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j] or self.leq[j, i])

    @cached_property
    def height(self) -> np.ndarray:
        """Length of the longest chain from the bottom to each element."""
        h = np.zeros(self.n, dtype=int)
        for i in np.argsort(self.leq.sum(axis=0), kind="stable"):
            below = self.lower_covers(int(i))
            if below:
                h[i] = max(h[b] for b in below) + 1
        return h

    @cached_property
    def depth(self) -> np.ndarray:
        """Length of the longest chain from each element to the top."""
        d = np.zeros(self.n, dtype=int)
        for i in np.argsort(self.leq.sum(axis=1), kind="stable"):
            above = self.upper_covers(int(i))
            if above:
                d[i] = max(d[a] for a in above) + 1
        return d

    @cached_property
    def jir(self) -> tuple[int, ...]:
        """Elements with exactly one lower cover."""
        return tuple(np.flatnonzero(self.covers.sum(axis=0) == 1).tolist())

    @cached_property
    def mir(self) -> tuple[int, ...]:
        """Elements with exactly one upper cover."""
        return tuple(np.flatnonzero(self.covers.sum(axis=1) == 1).tolist())

    # -- joins and meets ----------------------------------------------------------

    @cached_property
    def join_table(self) -> np.ndarray:
        return _bound_table(self.leq, "join")

    @cached_property
    def meet_table(self) -> np.ndarray:
        return _bound_table(self.leq.T, "meet")

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def join_all(self, elements: Iterable[int]) -> int:
        out = self.bottom
        for e in elements:
            out = int(self.join_table[out, e])
        return out

    def meet_all(self, elements: Iterable[int]) -> int:
        out = self.top
        for e in elements:
            out = int(self.meet_table[out, e])
        return out

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def restrict(self, elements: Iterable[int]) -> "FiniteLattice":
        """Sublattice on ``elements`` (order inherited; must be a lattice)."""
        keep = sorted(set(int(e) for e in elements))
        return FiniteLattice([self.labels[k] for k in keep], self.leq[np.ix_(keep, keep)])

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(self.labels, self.leq.T, check=False)

    def to_dict(self) -> dict:
        """Lattice file model: element names plus the cover pairs."""
        return {
            "elements": list(self.labels),
            "covers": [[self.labels[a], self.labels[b]] for a, b in self.cover_pairs()],
        }


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    out = rel.copy()
    n = len(out)
    for k in range(n):
        out |= np.outer(out[:, k], out[k])
    return out


def _bound_table(leq: np.ndarray, what: str) -> np.ndarray:
    """Least upper bounds (or, on the transpose, greatest lower bounds).

    The least member of a set of upper bounds has the strictly smallest
    down-set, so it is the argmin of down-set sizes.
    """
    n = len(leq)
    downsize = leq.sum(axis=0)
    table = np.empty((n, n), dtype=np.int64)
    big = n + 1
    for i in range(n):
        ub = leq[i][None, :] & leq  # ub[j, z]: z above i and j
        if not ub.any(axis=1).all():
            raise LatticeError(f"some pair has no common {'upper' if what == 'join' else 'lower'} bound")
        z = np.where(ub, downsize[None, :], big).argmin(axis=1)
        if not (leq[z] | ~ub).all():
            j = int(np.flatnonzero(~(leq[z] | ~ub).all(axis=1))[0])
            raise LatticeError(f"elements {i} and {j} have no {what}")
        table[i] = z
    return table


# -- constructors for standard lattices ------------------------------------------


def build_from_closed_sets(cs: ClosedSetLattice | Iterable, labels: Sequence[str] | None = None) -> FiniteLattice:
    """Order the closed sets by containment.

    Accepts a :class:`ClosedSetLattice` or any iterable of sets; element
    labels default to the ``{A,B}`` rendering of each set.
    """
    if isinstance(cs, ClosedSetLattice):
        masks = list(cs.sets)
        names = cs.set_labels() if labels is None else list(labels)
    else:
        sets = [frozenset(s) for s in cs]
        ground = sorted(set().union(*sets)) if sets else []
        pos = {g: k for k, g in enumerate(ground)}
        masks = [sum(1 << pos[g] for g in s) for s in sets]
        if labels is None:
            order = sorted(range(len(sets)), key=lambda k: (len(sets[k]), sorted(sets[k])))
            masks = [masks[k] for k in order]
            sets = [sets[k] for k in order]
            names = ["{" + ",".join(sorted(map(str, s))) + "}" for s in sets]
        else:
            names = list(labels)
    if len(set(masks)) != len(masks):
        raise LatticeError("duplicate closed sets")
    mset = set(masks)
    for a, b in combinations(masks, 2):
        if a & b not in mset:
            raise LatticeError("family of closed sets is not closed under intersection")
    leq = np.array([[a & b == a for b in masks] for a in masks], dtype=bool)
    if masks and not leq.all(axis=1).any():
        raise LatticeError("closed sets have no least member")
    return FiniteLattice(names, leq)


def lattice_of_family(family, max_size: int = 20) -> FiniteLattice:
    """Closed-set lattice of the hull closure on a circle family."""
    return build_from_closed_sets(enumerate_closed_sets(CircleClosure(family), max_size=max_size))


def chain_lattice(k: int) -> FiniteLattice:
    return FiniteLattice([str(i) for i in range(k)], np.triu(np.ones((k, k), dtype=bool)))


def boolean_lattice(k: int) -> FiniteLattice:
    masks = range(1 << k)
    return FiniteLattice([format(m, f"0{k}b") if k else "0" for m in masks],
                         [[a & b == a for b in masks] for a in masks])


def m3_lattice() -> FiniteLattice:
    return FiniteLattice.from_covers("0abc1", [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def n5_lattice() -> FiniteLattice:
    return FiniteLattice.from_covers("0abc1", [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


# -- width ------------------------------------------------------------------------


@dataclass(frozen=True)
class WidthResult:
    width: int
    antichain: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]

    def __int__(self) -> int:
        return self.width


def _max_matching(adj: list[list[int]], n_right: int) -> list[int]:
    """Augmenting-path bipartite matching; returns ``match_right``."""
    match_right = [-1] * n_right

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, set())
    return match_right


def width(L: FiniteLattice, elements: Iterable[int] | None = None) -> WidthResult:
    """Width of a subposet with a maximum antichain and a minimum chain cover.

    The chain cover comes from a maximum matching on the strict order;
    the antichain from the matching's König vertex cover.
    """
    P = list(range(L.n)) if elements is None else sorted(set(int(e) for e in elements))
    k = len(P)
    lt = L.lt[np.ix_(P, P)]
    adj = [np.flatnonzero(lt[u]).tolist() for u in range(k)]
    match_right = _max_matching(adj, k)
    match_left = [-1] * k
    for v, u in enumerate(match_right):
        if u >= 0:
            match_left[u] = v

    chains = []
    for start in range(k):
        if match_right[start] >= 0:
            continue
        chain, cur = [], start
        while cur >= 0:
            chain.append(P[cur])
            cur = match_left[cur]
        chains.append(tuple(chain))

    # König: Z = vertices reachable from unmatched left vertices by alternating paths
    z_left, z_right = set(), set()
    stack = [u for u in range(k) if match_left[u] < 0]
    z_left.update(stack)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in z_right:
                z_right.add(v)
                w = match_right[v]
                if w >= 0 and w not in z_left:
                    z_left.add(w)
                    stack.append(w)
    antichain = tuple(P[x] for x in range(k) if x in z_left and x not in z_right)
    assert len(antichain) == len(chains), "Dilworth duality violated"
    return WidthResult(len(chains), antichain, tuple(chains))


def convex_dimension(L: FiniteLattice) -> int:
    """Width of the meet-irreducible elements."""
    return width(L, L.mir).width


def is_dually_slim(L: FiniteLattice) -> bool:
    return convex_dimension(L) <= 2


# -- semimodularity and friends ----------------------------------------------------


def is_lower_semimodular(L: FiniteLattice) -> Verdict:
    """``a ≺ a∨b`` implies ``a∧b ≺ b``; witness is the first failing ``(a, b)``."""
    C, J, M = L.covers, L.join_table, L.meet_table
    idx = np.arange(L.n)
    premise = C[idx[:, None], J]
    conclusion = C[M, idx[None, :]]
    bad = np.argwhere(premise & ~conclusion)
    if len(bad):
        a, b = bad[0]
        return Verdict(False, (L.labels[a], L.labels[b]))
    return Verdict(True)


def _is_distributive_on(L: FiniteLattice, elems: list[int]) -> tuple | None:
    if len(elems) < 5:
        return None
    e = np.array(elems)
    J, M = L.join_table, L.meet_table
    x, y, z = np.meshgrid(e, e, e, indexing="ij")
    lhs = M[x, J[y, z]]
    rhs = J[M[x, y], M[x, z]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = bad[0]
        return (L.labels[e[i]], L.labels[e[j]], L.labels[e[k]])
    return None


def is_meet_distributive(L: FiniteLattice) -> Verdict:
    """Each interval ``[u_*, u]`` is distributive, ``u_*`` the meet of ``u``'s lower covers."""
    for u in range(L.n):
        if u == L.bottom:
            continue
        low = L.meet_all(L.lower_covers(u))
        interval = np.flatnonzero(L.leq[low] & L.leq[:, u]).tolist()
        bad = _is_distributive_on(L, interval)
        if bad is not None:
            return Verdict(False, {"element": L.labels[u], "triple": bad})
    return Verdict(True)


def has_cover_preserving_m3(L: FiniteLattice) -> Verdict:
    """Search for ``u ≺ a0, a1, a2 ≺ v`` forming a diamond."""
    C, M = L.covers, L.meet_table
    for v in range(L.n):
        lower = L.lower_covers(v)
        for a0, a1, a2 in combinations(lower, 3):
            u = M[a0, a1]
            if M[a0, a2] == u and M[a1, a2] == u and C[u, a0] and C[u, a1] and C[u, a2]:
                return Verdict(True, tuple(L.labels[x] for x in (u, a0, a1, a2, v)))
    return Verdict(False)


# -- Carathéodory --------------------------------------------------------------------


def caratheodory(L: FiniteLattice, n: int, max_jir: int = 16) -> Verdict:
    """Carathéodory condition: every join-irreducible below a join of
    join-irreducibles is below the join of at most ``n`` of them.

    Minimal covering sets are enumerated in increasing size; supersets of a
    covering set are pruned since they cannot be minimal.  Witness is
    ``(a, B)`` with ``B`` a minimal cover of ``a`` larger than ``n``.
    """
    jir = list(L.jir)
    if len(jir) > max_jir:
        raise SizeBoundError(f"{len(jir)} join-irreducibles exceed bound {max_jir}")
    J, leq = L.join_table, L.leq
    for a in jir:
        cands = [b for b in jir if not leq[a, b]]
        # sets are tuples of positions into cands with their join
        level = [((), L.bottom)]
        size = 0
        while level:
            size += 1
            nxt = []
            for combo, joined in level:
                start = combo[-1] + 1 if combo else 0
                for p in range(start, len(cands)):
                    j = int(J[joined, cands[p]])
                    new = combo + (p,)
                    if leq[a, j]:
                        if size > n and _is_minimal_cover(L, a, [cands[q] for q in new]):
                            return Verdict(False, (L.labels[a], tuple(L.labels[cands[q]] for q in new)))
                    else:
                        nxt.append((new, j))
            level = nxt
    return Verdict(True)


def _is_minimal_cover(L: FiniteLattice, a: int, B: list[int]) -> bool:
    for drop in range(len(B)):
        if L.leq[a, L.join_all(B[:drop] + B[drop + 1:])]:
            return False
    return True


# -- structural probes ----------------------------------------------------------------


@dataclass(frozen=True)
class ProbeEntry:
    element: str
    filter_is_chain: bool
    filter_is_prime: bool


def _filter_is_prime(L: FiniteLattice, b: int) -> bool:
    rest = np.flatnonzero(~L.leq[b])
    if not len(rest):
        return False
    J = L.join_table[np.ix_(rest, rest)]
    return not L.leq[b, J].any()


def maximal_doubly_irreducibles(L: FiniteLattice) -> list[int]:
    doubly = sorted(set(L.jir) & set(L.mir))
    return [b for b in doubly if not any(L.lt[b, c] for c in doubly)]


def peelable_elements(L: FiniteLattice) -> list[int]:
    """Join-irreducibles ``c`` whose filter is a prime chain holding no
    other join-irreducible, so that ``Jir L = Jir(L \\ ↑c) ∪ {c}``.

    Maximal doubly irreducible elements come first (by height, descending);
    a join-irreducible top is appended when it is not already listed.
    """
    jir = set(L.jir)
    out = []
    for c in sorted(L.jir, key=lambda b: (b not in set(L.mir), -L.height[b], L.labels[b])):
        up = L.filter(c)
        if any(x in jir for x in up if x != c):
            continue
        sub = L.leq[np.ix_(up, up)]
        if not (sub | sub.T).all() or len(up) == L.n:
            continue
        if _filter_is_prime(L, c):
            out.append(c)
    return out


def structural_probe(L: FiniteLattice, strict: bool = True) -> list[ProbeEntry]:
    """Maximal doubly irreducible elements with chain/prime-filter checks.

    For a dually slim, lower semimodular lattice with at least three
    elements every probe must pass; with ``strict`` this is asserted.
    """
    if L.n < 3:
        return []
    out = []
    for b in maximal_doubly_irreducibles(L):
        up = L.filter(b)
        chain = bool((L.leq[np.ix_(up, up)] | L.leq[np.ix_(up, up)].T).all())
        out.append(ProbeEntry(L.labels[b], chain, _filter_is_prime(L, b)))
    if strict and is_lower_semimodular(L) and is_dually_slim(L):
        assert out, "dually slim lower semimodular lattice without a doubly irreducible element"
        assert all(p.filter_is_chain and p.filter_is_prime for p in out), out
    return out


# -- geometry of a lattice -------------------------------------------------------------


class JirClosure(_MaskedClosure):
    """Closure on join-irreducibles: ``X -> {j : j <= ∨X}``."""

    def __init__(self, L: FiniteLattice):
        self.lattice = L
        self.jir = list(L.jir)
        self.labels = tuple(L.labels[j] for j in self.jir)

    def closure_mask(self, mask: int) -> int:
        top = self.lattice.join_all(self.jir[k] for k in bits(mask))
        return sum(1 << k for k, j in enumerate(self.jir) if self.lattice.leq[j, top])


def join_extension_map(L1: FiniteLattice, L2: FiniteLattice, phi: dict[int, int]) -> Verdict:
    """Extend a bijection between join-irreducibles by joins and test it.

    ``x -> ∨{phi(a) : a in Jir, a <= x}``; the verdict holds iff the
    extension is a bijective order isomorphism.  Witness is the mapping
    as labels, or the reason for failure.
    """
    if sorted(phi) != sorted(L1.jir) or sorted(phi.values()) != sorted(L2.jir):
        return Verdict(False, "map is not a bijection between join-irreducibles")
    ext = [L2.join_all(phi[a] for a in L1.jir if L1.leq[a, x]) for x in range(L1.n)]
    if L1.n != L2.n or len(set(ext)) != L1.n:
        return Verdict(False, "extension is not bijective")
    e = np.array(ext)
    if not (L1.leq == L2.leq[np.ix_(e, e)]).all():
        return Verdict(False, "extension does not preserve and reflect order")
    return Verdict(True, {L1.labels[x]: L2.labels[ext[x]] for x in range(L1.n)})


# -- betweenness -------------------------------------------------------------------


def horizontal_betweenness_check(L: FiniteLattice, positions: dict | None = None) -> Verdict:
    """Diagram-free check of betweenness for join-irreducible antichains.

    ``positions`` maps each join-irreducible label to the ``(left, right)``
    endpoints of its circle in a representation; if omitted, one is
    synthesized.  Incomparable elements are ordered left-to-right by their
    left endpoints (which must agree with the right endpoints).  For every
    3-antichain ``{x0, x1, y}`` of join-irreducibles, ``y <= x0 ∨ x1`` must
    hold exactly when ``y`` sits between ``x0`` and ``x1`` in that order.
    Not applicable (``holds`` false, witness ``"not applicable"``) unless L
    is dually slim and lower semimodular.
    """
    if not (is_lower_semimodular(L) and is_dually_slim(L)):
        return Verdict(False, "not applicable")
    if positions is None:
        from .synthesis import synthesize

        rep, _ = synthesize(L)
        positions = {lab: (c.lmpt, c.rmpt) for lab, c in rep.circles_by_element().items()}
    jir = list(L.jir)
    pos = {j: positions[L.labels[j]] for j in jir}
    for u, v in combinations(jir, 2):
        if L.comparable(u, v):
            continue
        (lu, ru), (lv, rv) = pos[u], pos[v]
        if (lu < lv) != (ru < rv):
            return Verdict(False, {"crossing": (L.labels[u], L.labels[v])})
    for x0, x1, y in combinations(jir, 3):
        for a, b, c in ((x0, x1, y), (x0, y, x1), (x1, y, x0)):
            if L.comparable(a, b) or L.comparable(a, c) or L.comparable(b, c):
                continue
            below = bool(L.leq[c, L.join_table[a, b]])
            between = min(pos[a][0], pos[b][0]) < pos[c][0] < max(pos[a][0], pos[b][0])
            if below != between:
                return Verdict(False, {"antichain": (L.labels[a], L.labels[b], L.labels[c]),
                                       "below_join": below, "between": between})
    return Verdict(True)
