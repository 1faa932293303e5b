"""Static SVG drawings of circle families and DOT Hasse diagrams."""
from __future__ import annotations

import json
from fractions import Fraction
from xml.sax.saxutils import escape

from .geometry import CircleFamily
from .lattice import FiniteLattice

__all__ = ["family_to_svg", "lattice_to_dot", "UNIT"]

UNIT = 40
MARGIN = 1


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def family_to_svg(family: CircleFamily, unit: int = UNIT) -> str:
    """Circles drawn to scale (``unit`` pixels per unit length) with their
    ids, over the x axis.  The viewBox fits the drawing; y points up."""
    circles = family.circles
    if circles:
        xmin = min(c.x - c.r for c in circles)
        xmax = max(c.x + c.r for c in circles)
        ymin = min(c.y - c.r for c in circles)
        ymax = max(c.y + c.r for c in circles)
    else:
        xmin = xmax = ymin = ymax = Fraction(0)
    xmin, xmax = float(xmin) - MARGIN, float(xmax) + MARGIN
    ymin, ymax = min(float(ymin), 0.0) - MARGIN, max(float(ymax), 0.0) + MARGIN
    w, h = (xmax - xmin) * unit, (ymax - ymin) * unit

    def px(x) -> float:
        return (float(x) - xmin) * unit

    def py(y) -> float:
        return (ymax - float(y)) * unit

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'  <line class="axis" x1="0" y1="{_fmt(py(0))}" x2="{_fmt(w)}" y2="{_fmt(py(0))}" '
        f'stroke="#888" stroke-width="1"/>',
    ]
    for cid, c in family:
        cx, cy = _fmt(px(c.x)), _fmt(py(c.y))
        out.append(
            f'  <circle id="{escape(cid)}" cx="{cx}" cy="{cy}" r="{_fmt(float(c.r) * unit)}" '
            f'fill="none" stroke="black" stroke-width="1.5"/>'
        )
        out.append(
            f'  <text x="{cx}" y="{_fmt(py(c.y + c.r) - 3)}" text-anchor="middle" '
            f'font-size="12">{escape(cid)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def lattice_to_dot(L: FiniteLattice, name: str = "L") -> str:
    """Hasse diagram of the cover relation; ranks follow element height."""
    q = json.dumps
    out = [f"digraph {q(name)} {{", "  rankdir=BT;", '  node [shape=circle, fontsize=10, label=""];']
    jir = set(L.jir)
    for k, lab in enumerate(L.labels):
        style = ", style=filled, fillcolor=black" if k in jir else ""
        out.append(f"  {q(lab)} [xlabel={q(lab)}{style}];")
    for a, b in L.cover_pairs():
        out.append(f"  {q(L.labels[a])} -> {q(L.labels[b])} [arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"
