import re
import xml.etree.ElementTree as ET

from circlegeom.geometry import CircleFamily
from circlegeom.render import UNIT, family_to_svg, lattice_to_dot
from oracles import covers_brute

SVG = "{http://www.w3.org/2000/svg}"


def test_svg_structure(three_equal):
    root = ET.fromstring(family_to_svg(three_equal))
    circles = root.findall(f"{SVG}circle")
    assert [c.get("id") for c in circles] == ["A", "B", "C"]
    assert [float(c.get("r")) for c in circles] == [UNIT] * 3
    assert len(root.findall(f"{SVG}line[@class='axis']")) == 1
    assert [t.text for t in root.findall(f"{SVG}text")] == ["A", "B", "C"]
    # drawn to scale: centers 10 units apart
    xs = [float(c.get("cx")) for c in circles]
    assert xs[1] - xs[0] == xs[2] - xs[1] == 10 * UNIT


def test_svg_of_empty_family():
    root = ET.fromstring(family_to_svg(CircleFamily.collinear([])))
    assert root.findall(f"{SVG}circle") == []
    assert len(root.findall(f"{SVG}line")) == 1


def test_svg_planar_y_points_up():
    fam = CircleFamily.planar([(0, 0, 1), (0, 5, 1)])
    root = ET.fromstring(family_to_svg(fam))
    low, high = root.findall(f"{SVG}circle")
    assert float(high.get("cy")) < float(low.get("cy"))


def test_dot_of_seven_element_lattice(seven):
    dot = lattice_to_dot(seven)
    nodes = re.findall(r'^  "([^"]+)" \[xlabel', dot, re.M)
    edges = re.findall(r'^  "([^"]+)" -> "([^"]+)"', dot, re.M)
    assert sorted(nodes) == sorted(seven.labels)
    assert len(edges) == len(covers_brute(seven)) == 9
    assert dot.count("fillcolor=black") == len(seven.jir)


def test_render_is_deterministic(seven, three_equal):
    assert lattice_to_dot(seven) == lattice_to_dot(seven)
    assert family_to_svg(three_equal) == family_to_svg(three_equal)
