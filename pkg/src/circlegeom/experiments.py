"""Small-scale exploration of which lattices arise from circle families.

Three scopes are sampled: concave collinear families, arbitrary collinear
families and planar families on an integer grid.  Each run reports the
number of lattices up to isomorphism and witnesses separating the classes:

* a collinear family of convex dimension >= 3 (not realizable by a
  concave collinear family, whose lattices have convex dimension <= 2);
* a planar point family failing the Carathéodory condition C2 (collinear
  families always satisfy it);
* a concentric family whose lattice has a join-irreducible that is not an
  atom (point geometries have only atoms as join-irreducibles).
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .closure import SizeBoundError
from .corpus import (
    IsoClasses,
    concentric_family,
    random_collinear_family,
    random_concave_family,
    random_planar_family,
    tangent_family,
    triangle_with_barycenter,
)
from .geometry import CircleFamily
from .lattice import (
    FiniteLattice,
    caratheodory,
    convex_dimension,
    is_dually_slim,
    is_lower_semimodular,
    lattice_of_family,
)

__all__ = ["SCOPES", "MAX_MEMBERS", "Witness", "EnumerationSummary", "enumerate_scope", "family_record"]

SCOPES = ("concave-collinear", "collinear", "planar-grid")
MAX_MEMBERS = 6


@dataclass
class Witness:
    kind: str
    family: CircleFamily
    detail: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "family": family_record(self.family)}


@dataclass
class EnumerationSummary:
    scope: str
    max_members: int
    samples: int
    seed: int
    families: int = 0
    classes: int = 0
    cdim: Counter = field(default_factory=Counter)
    dually_slim_lsm: int = 0
    c2_failures: int = 0
    non_atom_jir: int = 0
    witnesses: dict[str, Witness] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "max_members": self.max_members,
            "samples": self.samples,
            "seed": self.seed,
            "families": self.families,
            "classes": self.classes,
            "convex_dimension": {str(k): v for k, v in sorted(self.cdim.items())},
            "dually_slim_lower_semimodular": self.dually_slim_lsm,
            "c2_failures": self.c2_failures,
            "non_atom_join_irreducible": self.non_atom_jir,
            "witnesses": {k: w.to_dict() for k, w in sorted(self.witnesses.items())},
        }

    def to_text(self) -> str:
        rows = [
            ("scope", self.scope),
            ("families examined", self.families),
            ("lattices up to isomorphism", self.classes),
            ("convex dimension histogram", ", ".join(f"{k}: {v}" for k, v in sorted(self.cdim.items()))),
            ("dually slim + lower semimodular", f"{self.dually_slim_lsm}/{self.classes}"),
            ("C2 failures", self.c2_failures),
            ("non-atom join-irreducibles", self.non_atom_jir),
        ]
        width = max(len(r[0]) for r in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for kind, w in sorted(self.witnesses.items()):
            circles = ", ".join(f"{cid}{_coords(c, self.scope)}" for cid, c in w.family)
            lines.append(f"witness {kind}: {w.detail}; {circles}")
        return "\n".join(lines) + "\n"


def _coords(c, scope: str) -> str:
    if scope == "planar-grid":
        return f"({c.x}, {c.y}; r={c.r})"
    return f"(x={c.x}, r={c.r})"


def family_record(family: CircleFamily) -> dict:
    return {
        "kind": family.kind,
        "circles": [
            {"id": cid, "x": str(c.x), "y": str(c.y), "r": str(c.r)} for cid, c in family
        ],
    }


def _has_non_atom_jir(L: FiniteLattice) -> bool:
    return any(L.height[j] > 1 for j in L.jir)


def _fixed_families(scope: str, max_members: int) -> list[CircleFamily]:
    if scope == "concave-collinear":
        return [concentric_family(tuple(range(1, k + 1))) for k in range(1, min(3, max_members) + 1)]
    if scope == "collinear":
        return [tangent_family(k) for k in range(2, min(3, max_members) + 1)]
    return [triangle_with_barycenter()] if max_members >= 4 else []


def _random_family(scope: str, rng: random.Random, max_members: int) -> CircleFamily:
    size = rng.randint(1, max_members)
    if scope == "concave-collinear":
        return random_concave_family(rng, size)
    if scope == "collinear":
        return random_collinear_family(rng, size, span=6, max_radius=4, denominator=1)
    return random_planar_family(rng, size, span=4, max_radius=2)


def enumerate_scope(scope: str, max_members: int = 5, samples: int = 200, seed: int = 0) -> EnumerationSummary:
    """Sample families in ``scope`` and tabulate their lattices."""
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    if not 1 <= max_members <= MAX_MEMBERS:
        raise SizeBoundError(f"family size bound must be between 1 and {MAX_MEMBERS}, got {max_members}")
    rng = random.Random(seed)
    summary = EnumerationSummary(scope, max_members, samples, seed)
    classes = IsoClasses()
    families = _fixed_families(scope, max_members)
    families += [_random_family(scope, rng, max_members) for _ in range(samples)]
    for family in families:
        summary.families += 1
        L = lattice_of_family(family)
        if not classes.add(L):
            continue
        cdim = convex_dimension(L)
        summary.cdim[cdim] += 1
        if is_lower_semimodular(L) and is_dually_slim(L):
            summary.dually_slim_lsm += 1
        if cdim >= 3 and "cdim>=3" not in summary.witnesses:
            summary.witnesses["cdim>=3"] = Witness("cdim>=3", family, f"convex dimension {cdim}")
        c2 = caratheodory(L, 2)
        if not c2:
            summary.c2_failures += 1
            if "not-C2" not in summary.witnesses:
                a, B = c2.witness
                summary.witnesses["not-C2"] = Witness(
                    "not-C2", family, f"{a} is below the join of {', '.join(B)} but of no two of them"
                )
        if _has_non_atom_jir(L):
            summary.non_atom_jir += 1
            if "non-atom-jir" not in summary.witnesses:
                j = next(j for j in L.jir if L.height[j] > 1)
                summary.witnesses["non-atom-jir"] = Witness(
                    "non-atom-jir", family, f"join-irreducible {L.labels[j]} at height {int(L.height[j])}"
                )
    summary.classes = len(classes)
    return summary
