"""Input coercion for the estimator API."""
from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .geometry import Circle, CircleFamily
from .lattice import FiniteLattice

__all__ = ["check_family", "check_lattice", "check_subsets"]


def check_family(X, kind: str | None = None) -> CircleFamily:
    """Accept a :class:`CircleFamily`, a mapping id -> circle, or rows of
    ``(x, r)`` (collinear) / ``(x, y, r)`` (planar)."""
    if isinstance(X, CircleFamily):
        if kind is not None and X.kind != kind:
            raise ValueError(f"expected a {kind} family, got {X.kind}")
        return X
    if isinstance(X, Mapping):
        rows = list(X.values())
        ids = [str(k) for k in X]
    else:
        rows = list(X)
        ids = None
    if rows and all(isinstance(r, Circle) for r in rows):
        inferred = "collinear" if all(r.collinear for r in rows) else "planar"
        kind = kind or inferred
        return CircleFamily.collinear(rows, ids) if kind == "collinear" else CircleFamily.planar(rows, ids)
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError(f"rows have mixed lengths {sorted(widths)}")
    width = widths.pop() if widths else 2
    if width not in (2, 3):
        raise ValueError(f"rows must be (x, r) or (x, y, r), got length {width}")
    rows = [tuple(v.item() if isinstance(v, np.generic) else v for v in r) for r in rows]
    if width == 2:
        if kind == "planar":
            return CircleFamily.planar([(x, 0, r) for x, r in rows], ids)
        return CircleFamily.collinear(rows, ids)
    if kind == "collinear":
        off = [r for r in rows if r[1] != 0]
        if off:
            raise ValueError(f"circle {off[0]} is off the x axis")
        return CircleFamily.collinear([(x, r) for x, _, r in rows], ids)
    return CircleFamily.planar(rows, ids)


def check_lattice(L) -> FiniteLattice:
    """Accept a :class:`FiniteLattice` or a lattice-file style mapping."""
    if isinstance(L, FiniteLattice):
        return L
    if isinstance(L, Mapping) and "elements" in L:
        return FiniteLattice.from_covers(L["elements"], [tuple(p) for p in L.get("covers", [])])
    raise TypeError(f"cannot interpret {type(L).__name__} as a lattice")


def check_subsets(X, family: CircleFamily) -> np.ndarray:
    """Boolean indicator matrix (subsets x members) from an indicator array
    or from iterables of member ids."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        if X.shape[1] != len(family):
            raise ValueError(f"expected {len(family)} columns, got {X.shape[1]}")
        return X.astype(bool)
    out = np.zeros((len(X), len(family)), dtype=bool)
    for row, ids in enumerate(X):
        for cid in ids:
            out[row, family.index(cid)] = True
    return out
