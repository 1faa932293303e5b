"""Convex geometries of circles: hull closure, lattice analytics and
representation of convex dimension 2 geometries by collinear circles."""
from .closure import (
    CircleClosure,
    ClosedSetLattice,
    IntervalClosure,
    SizeBoundError,
    closure,
    enumerate_closed_sets,
    horizontal_interval,
    verify_convex_geometry,
)
from .estimators import CircleConvexGeometry, IntervalProjector, LatticeSynthesizer
from .geometry import (
    Circle,
    CircleFamily,
    GeometryError,
    disc_contains_disc,
    disc_in_hull_family,
    disc_in_hull_pair_collinear,
    end_lt,
    is_concave,
    is_separated,
)
from .isomorphism import is_isomorphic
from .lattice import (
    FiniteLattice,
    LatticeError,
    build_from_closed_sets,
    caratheodory,
    convex_dimension,
    has_cover_preserving_m3,
    horizontal_betweenness_check,
    is_dually_slim,
    is_lower_semimodular,
    is_meet_distributive,
    lattice_of_family,
    structural_probe,
    width,
)
from .synthesis import (
    NotRepresentableError,
    Representation,
    SynthesisTrace,
    concavity_repair,
    interval_projection,
    synthesize,
    verify_representation,
)

__version__ = "0.1.0"
