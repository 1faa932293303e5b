"""JSON file formats for circle families, lattices and synthesis traces.

Rationals are written as ``"p/q"`` strings; integers (JSON numbers or
strings without a slash) are accepted on input.  ``dump_*`` produce the
canonical form, and ``dump(load(text)) == text`` for canonical input.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .geometry import DEFAULT_TOLERANCE, Circle, CircleFamily
from .lattice import FiniteLattice, LatticeError

__all__ = [
    "ParseError",
    "format_rational",
    "parse_rational",
    "parse_circle_file",
    "dump_circle_file",
    "parse_lattice_file",
    "dump_lattice_file",
    "read_circle_file",
    "read_lattice_file",
    "sniff_kind",
]


class ParseError(ValueError):
    """Malformed input file; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value, where: str = "") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected a rational string 'p/q' or an integer, got {value!r}", where)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {value!r}", where) from None


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _expect(obj, kind, where):
    if not isinstance(obj, kind):
        name = {dict: "an object", list: "a list", str: "a string"}[kind]
        raise ParseError(f"expected {name}", where)
    return obj


def parse_circle_file(text: str) -> CircleFamily:
    data = _expect(_load_json(text), dict, "$")
    unknown = set(data) - {"kind", "circles", "tolerance"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", "$")
    kind = data.get("kind", "collinear")
    if kind not in ("collinear", "planar"):
        raise ParseError(f"kind must be 'collinear' or 'planar', got {kind!r}", "$.kind")
    tolerance = parse_rational(data["tolerance"], "$.tolerance") if "tolerance" in data else DEFAULT_TOLERANCE
    members = []
    seen: dict[str, int] = {}
    for k, item in enumerate(_expect(data.get("circles", []), list, "$.circles")):
        where = f"$.circles[{k}]"
        _expect(item, dict, where)
        extra = set(item) - {"id", "x", "y", "r"}
        if extra:
            raise ParseError(f"unknown keys {sorted(extra)}", where)
        for key in ("id", "x", "r"):
            if key not in item:
                raise ParseError(f"missing {key!r}", where)
        cid = _expect(item["id"], str, f"{where}.id")
        if cid in seen:
            raise ParseError(f"duplicate id {cid!r} (first at $.circles[{seen[cid]}])", f"{where}.id")
        seen[cid] = k
        x = parse_rational(item["x"], f"{where}.x")
        y = parse_rational(item.get("y", 0), f"{where}.y")
        r = parse_rational(item["r"], f"{where}.r")
        if r < 0:
            raise ParseError("radius must be non-negative", f"{where}.r")
        if kind == "collinear" and y != 0:
            raise ParseError("collinear circles must have y = 0", f"{where}.y")
        members.append((cid, Circle(x, y, r)))
    try:
        return CircleFamily(tuple(members), kind, tolerance)
    except ValueError as exc:
        raise ParseError(str(exc), "$.circles") from None


def dump_circle_file(family: CircleFamily) -> str:
    lines = ["{", f'  "kind": "{family.kind}",']
    if family.kind == "planar":
        lines.append(f'  "tolerance": "{format_rational(family.tolerance)}",')
    items = []
    for cid, c in family:
        fields = [f'"id": {json.dumps(cid)}', f'"x": "{format_rational(c.x)}"']
        if family.kind == "planar":
            fields.append(f'"y": "{format_rational(c.y)}"')
        fields.append(f'"r": "{format_rational(c.r)}"')
        items.append("    {" + ", ".join(fields) + "}")
    if items:
        lines.append('  "circles": [')
        lines.append(",\n".join(items))
        lines.append("  ]")
    else:
        lines.append('  "circles": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_lattice_file(text: str) -> FiniteLattice:
    data = _expect(_load_json(text), dict, "$")
    unknown = set(data) - {"elements", "covers"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", "$")
    if "elements" not in data:
        raise ParseError("missing 'elements'", "$")
    elements = _expect(data["elements"], list, "$.elements")
    seen = {}
    for k, e in enumerate(elements):
        _expect(e, str, f"$.elements[{k}]")
        if e in seen:
            raise ParseError(f"duplicate element {e!r}", f"$.elements[{k}]")
        seen[e] = k
    covers = []
    for k, pair in enumerate(_expect(data.get("covers", []), list, "$.covers")):
        where = f"$.covers[{k}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("expected a [lower, upper] pair", where)
        for side, e in zip(("lower", "upper"), pair):
            if e not in seen:
                raise ParseError(f"{side} element {e!r} is not listed in elements", where)
        covers.append(tuple(pair))
    try:
        return FiniteLattice.from_covers(elements, covers)
    except LatticeError as exc:
        raise ParseError(str(exc), "$") from None


def dump_lattice_file(L: FiniteLattice) -> str:
    d = L.to_dict()
    lines = ["{", '  "elements": ' + json.dumps(d["elements"], ensure_ascii=False) + ","]
    if d["covers"]:
        lines.append('  "covers": [')
        lines.append(",\n".join("    " + json.dumps(p, ensure_ascii=False) for p in d["covers"]))
        lines.append("  ]")
    else:
        lines.append('  "covers": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def sniff_kind(text: str) -> str:
    """``"circles"`` or ``"lattice"`` depending on the top-level keys."""
    data = _expect(_load_json(text), dict, "$")
    if "elements" in data:
        return "lattice"
    if "circles" in data:
        return "circles"
    raise ParseError("neither a circle file nor a lattice file", "$")


def read_circle_file(path) -> CircleFamily:
    return parse_circle_file(Path(path).read_text(encoding="utf-8"))


def read_lattice_file(path) -> FiniteLattice:
    return parse_lattice_file(Path(path).read_text(encoding="utf-8"))
