"""Separated concave collinear circles realizing a given lattice.

The input is a finite, dually slim, lower semimodular lattice.  A chain is
realized by concentric circles.  Otherwise a join-irreducible ``c`` whose
filter is a prime chain is removed together with that filter, the rest is realized
recursively, and a new circle for ``c`` is placed so that it contains the
circles of the join-irreducibles below ``c`` and lies to the right of the
others.  The new circle is then enlarged to the right until the family is
concave.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator

from .closure import CircleClosure, IntervalClosure, enumerate_closed_sets
from .geometry import (
    Circle,
    CircleFamily,
    disc_contains_disc,
    disc_in_hull_pair_collinear,
    end_lt,
    is_concave,
    is_separated,
)
from .isomorphism import is_isomorphic
from .lattice import (
    FiniteLattice,
    Verdict,
    build_from_closed_sets,
    horizontal_betweenness_check,
    is_dually_slim,
    is_lower_semimodular,
    join_extension_map,
    peelable_elements,
)

__all__ = [
    "NotRepresentableError",
    "SynthesisError",
    "RepairError",
    "SynthesisStep",
    "SynthesisTrace",
    "Representation",
    "RepresentationReport",
    "synthesize",
    "concavity_repair",
    "interval_projection",
    "interval_lattice",
    "verify_representation",
    "replay_trace",
]

MAX_DOUBLINGS = 64


class NotRepresentableError(ValueError):
    """The lattice is not dually slim and lower semimodular."""


class SynthesisError(RuntimeError):
    """Every candidate was exhausted; carries the partial trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class RepairError(RuntimeError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass
class SynthesisStep:
    element: str
    below: list[str]
    left: list[str]
    lmpt: Fraction
    initial_rmpt: Fraction
    final_rmpt: Fraction
    repair_iterations: int
    mirrored: bool = False


@dataclass
class SynthesisTrace:
    """Base chain (bottom to top) plus one step per added circle.

    Replaying rebuilds the family exactly; see :func:`replay_trace`.
    """

    chain: list[str] = field(default_factory=list)
    steps: list[SynthesisStep] = field(default_factory=list)
    backtracks: int = 0

    def to_dict(self) -> dict:
        def enc(v):
            return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v

        return {
            "chain": list(self.chain),
            "steps": [{k: enc(v) for k, v in asdict(s).items()} for s in self.steps],
            "backtracks": self.backtracks,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SynthesisTrace":
        steps = []
        for s in data.get("steps", []):
            s = dict(s)
            for k in ("lmpt", "initial_rmpt", "final_rmpt"):
                s[k] = Fraction(s[k])
            steps.append(SynthesisStep(**s))
        return cls(list(data.get("chain", [])), steps, int(data.get("backtracks", 0)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class Representation:
    """A circle family with ``psi``: join-irreducible label -> circle id."""

    family: CircleFamily
    psi: dict

    def circles_by_element(self) -> dict[str, Circle]:
        return {e: self.family[cid] for e, cid in self.psi.items()}


# -- placement helpers -------------------------------------------------------


def _endpoints(circles) -> set[Fraction]:
    return {v for c in circles for v in (c.lmpt, c.rmpt)}


def _pick_in_gap(lo: Fraction | None, hi: Fraction | None, taken: set[Fraction]) -> Fraction:
    """Midpoint of the open gap, halved toward the lower end until unused."""
    if lo is None and hi is None:
        lo, hi = Fraction(-1), Fraction(1)
    elif lo is None:
        lo = hi - 2
    elif hi is None:
        hi = lo + 2
    v = (lo + hi) / 2
    while v in taken:
        v = (lo + v) / 2
    return v


def _pair_ok(c1: Circle, c2: Circle, c: Circle) -> bool:
    return disc_in_hull_pair_collinear(c2, c1, c)


def concavity_repair(partial, c: Circle, max_doublings: int = MAX_DOUBLINGS) -> tuple[Circle, int]:
    """Enlarge ``c`` to the right until every end-between pair is covered.

    ``partial`` holds the existing circles; ``c``'s rightmost point exceeds
    all of theirs.  For each pair ``(c1, c2)`` with ``lmpt c1 < lmpt c2``,
    ``c2`` must lie in the hull of ``c1`` and the new circle.  Growing the
    diameter with the leftmost point fixed only enlarges the disc, so the
    test is monotone and doubling finds a valid size.  Returns the repaired
    circle and the number of doublings.
    """
    circles = list(partial.circles) if isinstance(partial, CircleFamily) else list(partial)
    pairs = [(a, b) for a in circles for b in circles if a.lmpt < b.lmpt]
    lmpt, diameter = c.lmpt, c.rmpt - c.lmpt
    current = c
    for step in range(max_doublings + 1):
        bad = next(((a, b) for a, b in pairs if not _pair_ok(a, b, current)), None)
        if bad is None:
            return current, step
        diameter *= 2
        current = Circle.on_axis(lmpt + diameter / 2, diameter / 2)
    raise RepairError(f"concavity repair exceeded {max_doublings} doublings", bad)


def _mirror(psi: dict[str, Circle]) -> dict[str, Circle]:
    return {k: c.mirrored() for k, c in psi.items()}


def _chain_circles(L: FiniteLattice) -> tuple[dict[str, Circle], list[str]]:
    jir = sorted(L.jir, key=lambda j: L.height[j])
    return (
        {L.labels[j]: Circle.on_axis(0, k + 1) for k, j in enumerate(jir)},
        [L.labels[j] for j in jir],
    )


def _family_of(L: FiniteLattice, psi: dict[str, Circle]) -> CircleFamily:
    order = [L.labels[j] for j in L.jir if L.labels[j] in psi]
    return CircleFamily(tuple((lab, psi[lab]) for lab in order), "collinear")


def _realizes(L: FiniteLattice, psi: dict[str, Circle]) -> bool:
    """Extension-by-joins of ``psi`` is an isomorphism onto the closed sets."""
    family = _family_of(L, psi)
    system = CircleClosure(family)
    closed = enumerate_closed_sets(system, max_size=64)
    if len(closed) != L.n:
        return False
    M = build_from_closed_sets(closed)
    phi = {j: closed.position(system.closure_mask(1 << family.index(L.labels[j]))) for j in L.jir}
    return bool(join_extension_map(L, M, phi))


class _Search:
    def __init__(self, max_doublings: int, verify_steps: bool):
        self.max_doublings = max_doublings
        self.verify_steps = verify_steps
        self.backtracks = 0

    def run(self, L: FiniteLattice) -> Iterator[tuple[dict[str, Circle], SynthesisTrace]]:
        if L.is_chain():
            psi, chain = _chain_circles(L)
            yield psi, SynthesisTrace(chain)
            return
        candidates = peelable_elements(L)
        for c in candidates:
            up = set(L.filter(c))
            Lp = L.restrict(k for k in range(L.n) if k not in up)
            below = [L.labels[x] for x in Lp.jir if L.leq[L.index(Lp.labels[x]), c]]
            left = [Lp.labels[x] for x in Lp.jir if Lp.labels[x] not in below]
            for psi0, trace0 in self.run(Lp):
                for mirrored in (False, True):
                    psi = _mirror(psi0) if mirrored else psi0
                    found = self._extend(L, c, psi, below, left, mirrored)
                    if found is None:
                        self.backtracks += 1
                        continue
                    psi_new, step = found
                    trace = SynthesisTrace(list(trace0.chain), trace0.steps + [step])
                    yield psi_new, trace

    def _extend(self, L, c, psi, below, left, mirrored):
        lo = max((psi[y].lmpt for y in left), default=None)
        hi = min((psi[x].lmpt for x in below), default=None)
        if lo is not None and hi is not None and not lo < hi:
            return None
        taken = _endpoints(psi.values())
        lmpt = _pick_in_gap(lo, hi, taken)
        rmpt = max(max(taken), lmpt) + 1
        start = Circle.on_axis((lmpt + rmpt) / 2, (rmpt - lmpt) / 2)
        circle, iterations = concavity_repair(psi.values(), start, self.max_doublings)
        new = dict(psi)
        label = L.labels[c]
        new[label] = circle
        if self.verify_steps and not _realizes(L, new):
            return None
        step = SynthesisStep(label, list(below), list(left), lmpt, start.rmpt, circle.rmpt, iterations, mirrored)
        return new, step


def synthesize(
    L: FiniteLattice,
    max_doublings: int = MAX_DOUBLINGS,
    verify_steps: bool = True,
) -> tuple[Representation, SynthesisTrace]:
    """Build a separated, concave collinear family whose closed-set lattice
    is isomorphic to ``L``.

    Circle ids are the labels of the join-irreducible elements they stand
    for.  Raises :class:`NotRepresentableError` unless ``L`` is dually slim
    and lower semimodular.
    """
    if not is_lower_semimodular(L) or not is_dually_slim(L):
        raise NotRepresentableError(
            "not convex dimension ≤ 2: the lattice is not dually slim and lower semimodular"
        )
    search = _Search(max_doublings, verify_steps)
    for psi, trace in search.run(L):
        trace.backtracks = search.backtracks
        family = _family_of(L, psi)
        return Representation(family, {lab: lab for lab in family.ids}), trace
    raise SynthesisError("no placement order produced a representation",
                         SynthesisTrace(backtracks=search.backtracks))


def replay_trace(trace: SynthesisTrace) -> dict[str, Circle]:
    """Rebuild the element -> circle map recorded in a trace."""
    psi = {lab: Circle.on_axis(0, k + 1) for k, lab in enumerate(trace.chain)}
    for s in trace.steps:
        if s.mirrored:
            psi = _mirror(psi)
        psi[s.element] = Circle.on_axis((s.lmpt + s.final_rmpt) / 2, (s.final_rmpt - s.lmpt) / 2)
    return psi


# -- projections and verification ------------------------------------------------


def interval_projection(rep: Representation) -> list[tuple[str, Fraction, Fraction]]:
    """Each circle as the interval between its leftmost and rightmost points."""
    return [(cid, c.lmpt, c.rmpt) for cid, c in rep.family]


def interval_lattice(intervals) -> FiniteLattice:
    return build_from_closed_sets(enumerate_closed_sets(IntervalClosure(intervals)))


@dataclass
class RepresentationReport:
    checks: dict[str, bool]
    witnesses: dict[str, object]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


def verify_representation(rep: Representation, L: FiniteLattice) -> RepresentationReport:
    """Recheck a representation from scratch.

    * ``order``: ``u <= v`` iff circle ``u`` lies in disc ``v``;
    * ``left_right``: incomparable elements have crossing-free circles,
      both ends strictly on the same side;
    * ``separated`` and ``concave``;
    * ``isomorphic``: the closed-set lattice is isomorphic to ``L``
      (general search), and ``extension``: extending ``psi`` by joins is
      an isomorphism;
    * ``betweenness``: betweenness of antichains matches joins.
    """
    checks: dict[str, bool] = {}
    wit: dict[str, object] = {}
    circles = rep.circles_by_element()
    jir = list(L.jir)
    labels = [L.labels[j] for j in jir]

    checks["bijection"] = sorted(circles) == sorted(labels) and len(set(rep.psi.values())) == len(rep.psi) == len(rep.family)
    if not checks["bijection"]:
        wit["bijection"] = {"elements": labels, "mapped": sorted(circles)}
        return RepresentationReport(checks, wit)

    checks["order"] = True
    checks["left_right"] = True
    for u in jir:
        for v in jir:
            cu, cv = circles[L.labels[u]], circles[L.labels[v]]
            if bool(L.leq[u, v]) != disc_contains_disc(cv, cu):
                if checks["order"]:
                    checks["order"] = False
                    wit["order"] = (L.labels[u], L.labels[v])
            if u < v and not L.comparable(u, v):
                forward = end_lt(cu, cv, "left") and end_lt(cu, cv, "right")
                backward = end_lt(cv, cu, "left") and end_lt(cv, cu, "right")
                if forward == backward and checks["left_right"]:
                    checks["left_right"] = False
                    wit["left_right"] = (L.labels[u], L.labels[v])

    checks["separated"] = is_separated(rep.family)
    concave = is_concave(rep.family)
    checks["concave"] = concave.holds
    if not concave:
        wit["concave"] = concave.witness

    closed = enumerate_closed_sets(CircleClosure(rep.family), max_size=64)
    M = build_from_closed_sets(closed)
    iso = is_isomorphic(L, M)
    checks["isomorphic"] = iso.holds
    if iso:
        wit["isomorphism"] = iso.witness
    checks["extension"] = _realizes(L, circles)

    if checks["order"] and checks["left_right"]:
        positions = {lab: (c.lmpt, c.rmpt) for lab, c in circles.items()}
        between = horizontal_betweenness_check(L, positions)
        checks["betweenness"] = between.holds or between.witness == "not applicable"
        if not checks["betweenness"]:
            wit["betweenness"] = between.witness
    return RepresentationReport(checks, wit)


def representation_verdict(rep: Representation, L: FiniteLattice) -> Verdict:
    report = verify_representation(rep, L)
    return Verdict(report.ok, report)
