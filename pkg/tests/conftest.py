import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from circlegeom.geometry import Circle, CircleFamily
from circlegeom.lattice import lattice_of_family

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(lo=-10, hi=10, denominator=4):
    return st.integers(lo * denominator, hi * denominator).map(lambda k: Fraction(k, denominator))


def collinear_circles(span=8, max_radius=5, denominator=2):
    return st.builds(
        Circle.on_axis,
        rationals(-span, span, denominator),
        rationals(0, max_radius, denominator),
    )


@st.composite
def collinear_families(draw, min_size=1, max_size=6, **kw):
    circles = draw(st.lists(collinear_circles(**kw), min_size=min_size, max_size=max_size, unique=True))
    return CircleFamily.collinear(circles)


@st.composite
def planar_families(draw, min_size=1, max_size=5, span=5, max_radius=3):
    coord = st.integers(-span, span).map(Fraction)
    radius = st.integers(0, max_radius).map(Fraction)
    circles = draw(st.lists(st.builds(Circle, coord, coord, radius), min_size=min_size, max_size=max_size, unique=True))
    return CircleFamily.planar(circles)


@pytest.fixture
def three_equal():
    """Three unit circles centered at 0, 10 and 20."""
    return CircleFamily.collinear([(0, 1), (10, 1), (20, 1)])


@pytest.fixture
def seven(three_equal):
    """The 7-element closed-set lattice of three equal circles."""
    return lattice_of_family(three_equal)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(acceptance.RESULTS):
            terminalreporter.write_line(acceptance.RESULTS[n])
