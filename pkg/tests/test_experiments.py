import pytest

from circlegeom.closure import SizeBoundError
from circlegeom.corpus import concentric_family
from circlegeom.experiments import enumerate_scope
from circlegeom.lattice import lattice_of_family
from circlegeom.synthesis import synthesize


def test_concave_scope_is_dimension_two():
    s = enumerate_scope("concave-collinear", max_members=5, samples=120, seed=1)
    assert s.classes > 10
    assert s.dually_slim_lsm == s.classes
    assert set(s.cdim) <= {0, 1, 2}
    assert "cdim>=3" not in s.witnesses and "not-C2" not in s.witnesses
    # concentric circles: join-irreducibles above the atoms
    assert "non-atom-jir" in s.witnesses


def test_collinear_scope_finds_dimension_three():
    s = enumerate_scope("collinear", max_members=4, samples=40)
    w = s.witnesses["cdim>=3"]
    assert w.detail == "convex dimension 3" and len(w.family) == 3
    assert "not-C2" not in s.witnesses


def test_planar_scope_finds_c2_failure():
    s = enumerate_scope("planar-grid", max_members=4, samples=40)
    w = s.witnesses["not-C2"]
    assert w.family.ids == ("P", "Q", "R", "G")
    assert w.detail == "{G} is below the join of {P}, {Q}, {R} but of no two of them"


def test_summary_is_deterministic():
    a = enumerate_scope("planar-grid", max_members=3, samples=30, seed=5)
    b = enumerate_scope("planar-grid", max_members=3, samples=30, seed=5)
    assert a.to_dict() == b.to_dict() and a.to_text() == b.to_text()


def test_bounds():
    with pytest.raises(SizeBoundError):
        enumerate_scope("collinear", max_members=7)
    with pytest.raises(ValueError, match="unknown scope"):
        enumerate_scope("spherical")


def test_concentric_witness_round_trips():
    L = lattice_of_family(concentric_family())
    rep, _ = synthesize(L)
    assert all(c.x == 0 for c in rep.family.circles)
