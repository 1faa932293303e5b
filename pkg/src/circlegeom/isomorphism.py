"""Order isomorphism of finite lattices by refined backtracking."""
from __future__ import annotations

from collections import Counter, deque

import numpy as np

from .lattice import FiniteLattice, Verdict

__all__ = ["is_isomorphic", "signature", "invariant"]


def signature(L: FiniteLattice) -> list[tuple]:
    """Per-element invariant: height, depth, cover counts, ideal/filter
    sizes and irreducibility flags."""
    down = L.leq.sum(axis=0)
    up = L.leq.sum(axis=1)
    ncl = L.covers.sum(axis=0)
    ncu = L.covers.sum(axis=1)
    jir, mir = set(L.jir), set(L.mir)
    return [
        (int(L.height[i]), int(L.depth[i]), int(ncl[i]), int(ncu[i]), int(down[i]), int(up[i]), i in jir, i in mir)
        for i in range(L.n)
    ]


def invariant(L: FiniteLattice) -> tuple:
    """Isomorphism-invariant fingerprint, usable as a bucketing key."""
    return (L.n, tuple(sorted(signature(L))))


def _search_order(L: FiniteLattice, sig: list[tuple]) -> tuple[list[int], list[int]]:
    """Breadth-first order over the cover graph; each element after the
    first has an earlier cover-neighbour (its anchor)."""
    neigh = [sorted(set(L.lower_covers(i)) | set(L.upper_covers(i))) for i in range(L.n)]
    order, anchor = [], []
    seen = [False] * L.n
    queue = deque([L.bottom])
    seen[L.bottom] = True
    anchor_of = {L.bottom: -1}
    while queue:
        x = queue.popleft()
        order.append(x)
        anchor.append(anchor_of[x])
        for y in sorted(neigh[x], key=lambda y: (sig[y], y)):
            if not seen[y]:
                seen[y] = True
                anchor_of[y] = x
                queue.append(y)
    return order, anchor


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> Verdict:
    """Find an order isomorphism ``L1 -> L2``.

    Candidates are restricted to elements with equal signature that are
    cover-neighbours of the image of an already mapped neighbour; each
    assignment is checked against every earlier one.  The witness is a
    label -> label mapping.
    """
    if L1.n != L2.n:
        return Verdict(False)
    s1, s2 = signature(L1), signature(L2)
    if Counter(s1) != Counter(s2):
        return Verdict(False)
    order, anchor = _search_order(L1, s1)
    n = L1.n
    image = np.full(n, -1)
    used = np.zeros(n, dtype=bool)
    leq1, leq2 = L1.leq, L2.leq
    by_sig: dict[tuple, list[int]] = {}
    for y in range(n):
        by_sig.setdefault(s2[y], []).append(y)

    def candidates(pos):
        x = order[pos]
        a = anchor[pos]
        if a < 0:
            pool = by_sig[s1[x]]
        elif leq1[a, x]:
            pool = L2.upper_covers(int(image[a]))
        else:
            pool = L2.lower_covers(int(image[a]))
        done = order[:pos]
        src = image[done]
        for y in pool:
            if used[y] or s2[y] != s1[x]:
                continue
            if pos and not (
                (leq1[done, x] == leq2[src, y]).all() and (leq1[x, done] == leq2[y, src]).all()
            ):
                continue
            yield y

    stack = [candidates(0)]
    while stack:
        pos = len(stack) - 1
        x = order[pos]
        if image[x] >= 0:
            used[image[x]] = False
            image[x] = -1
        y = next(stack[-1], None)
        if y is None:
            stack.pop()
            continue
        image[x] = y
        used[y] = True
        if pos + 1 == n:
            return Verdict(True, {L1.labels[i]: L2.labels[int(image[i])] for i in range(n)})
        stack.append(candidates(pos + 1))
    return Verdict(False)
