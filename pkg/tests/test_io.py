from fractions import Fraction

import pytest
from hypothesis import given

from circlegeom.corpus import polygon_family, tangent_family
from circlegeom.io import (
    ParseError,
    dump_circle_file,
    dump_lattice_file,
    parse_circle_file,
    parse_lattice_file,
    parse_rational,
    sniff_kind,
)
from circlegeom.lattice import boolean_lattice, chain_lattice
from conftest import collinear_families, planar_families

CANONICAL = """{
  "kind": "collinear",
  "circles": [
    {"id": "A", "x": "0/1", "r": "1/1"},
    {"id": "B", "x": "21/2", "r": "3/4"}
  ]
}
"""


def test_canonical_circle_file_round_trips():
    fam = parse_circle_file(CANONICAL)
    assert fam.ids == ("A", "B") and fam["B"].x == Fraction(21, 2)
    assert dump_circle_file(fam) == CANONICAL


@given(collinear_families(min_size=0, max_size=6))
def test_collinear_emit_parse_emit(fam):
    text = dump_circle_file(fam)
    again = parse_circle_file(text)
    assert again == fam
    assert dump_circle_file(again) == text


@given(planar_families(min_size=0, max_size=5))
def test_planar_emit_parse_emit(fam):
    text = dump_circle_file(fam)
    assert dump_circle_file(parse_circle_file(text)) == text


@pytest.mark.parametrize("fam", [tangent_family(4), polygon_family(4)], ids=["tangent", "polygon"])
def test_example_families_round_trip(fam):
    text = dump_circle_file(fam)
    assert parse_circle_file(text) == fam


def test_shorthand_inputs():
    fam = parse_circle_file('{"circles": [{"id": "p", "x": 3, "y": "0", "r": "1/2"}]}')
    assert fam.kind == "collinear" and fam["p"].x == 3 and fam["p"].r == Fraction(1, 2)
    assert parse_rational("-6/4") == Fraction(-3, 2)


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"circles": [{"id": "A", "x": "0", "r": "-1"}]}', "$.circles[0].r"),
        ('{"circles": [{"id": "A", "x": "0", "r": "1"}, {"id": "A", "x": "5", "r": "1"}]}', "$.circles[1].id"),
        ('{"circles": [{"id": "A", "x": "0", "y": "1", "r": "1"}]}', "$.circles[0].y"),
        ('{"circles": [{"id": "A", "x": "1/0", "r": "1"}]}', "$.circles[0].x"),
        ('{"circles": [{"id": "A", "x": 0.5, "r": "1"}]}', "$.circles[0].x"),
        ('{"circles": [{"id": "A", "r": "1"}]}', "$.circles[0]"),
        ('{"kind": "spherical", "circles": []}', "$.kind"),
        ('{"circles": [], "colour": 1}', "$"),
        ('{\n  "circles": [\n  }', "line 3 column 3"),
    ],
)
def test_circle_parse_errors_are_positional(text, where):
    with pytest.raises(ParseError) as info:
        parse_circle_file(text)
    assert info.value.where == where


def test_lattice_file_round_trip():
    for L in (chain_lattice(4), boolean_lattice(2), chain_lattice(1)):
        text = dump_lattice_file(L)
        again = parse_lattice_file(text)
        assert again.labels == L.labels and (again.leq == L.leq).all()
        assert dump_lattice_file(again) == text


def test_lattice_file_canonical_form():
    text = '{\n  "elements": ["0", "1"],\n  "covers": [\n    ["0", "1"]\n  ]\n}\n'
    assert dump_lattice_file(parse_lattice_file(text)) == text


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"covers": []}', "$"),
        ('{"elements": ["a", "a"]}', "$.elements[1]"),
        ('{"elements": ["a"], "covers": [["a", "b"]]}', "$.covers[0]"),
        ('{"elements": ["a", "b"], "covers": [["a"]]}', "$.covers[0]"),
        ('{"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}', "$"),
        ('{"elements": ["a", "b", "c"], "covers": [["a", "b"], ["a", "c"]]}', "$"),
    ],
)
def test_lattice_parse_errors(text, where):
    with pytest.raises(ParseError) as info:
        parse_lattice_file(text)
    assert info.value.where == where


def test_sniff_kind():
    assert sniff_kind(CANONICAL) == "circles"
    assert sniff_kind(dump_lattice_file(chain_lattice(2))) == "lattice"
    with pytest.raises(ParseError):
        sniff_kind("{}")
