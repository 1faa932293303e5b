import random
from itertools import combinations

import numpy as np
from hypothesis import given, strategies as st

from circlegeom.corpus import convex_geometry_lattices, tangent_family
from circlegeom.geometry import CircleFamily
from circlegeom.isomorphism import invariant, is_isomorphic
from circlegeom.lattice import FiniteLattice, boolean_lattice, chain_lattice, lattice_of_family, m3_lattice, n5_lattice
from oracles import isomorphic_brute

SMALL = list(convex_geometry_lattices(7)) + [m3_lattice(), n5_lattice()]
SMALL += [L.dual() for L in SMALL]


def _relabel(L, seed):
    perm = list(range(L.n))
    random.Random(seed).shuffle(perm)
    inv = np.argsort(perm)
    return FiniteLattice([f"z{i}" for i in range(L.n)], L.leq[np.ix_(inv, inv)]), perm


def _is_order_isomorphism(L1, L2, mapping):
    m = np.array([L2.index(mapping[L1.labels[i]]) for i in range(L1.n)])
    return len(set(m)) == L1.n and (L1.leq == L2.leq[np.ix_(m, m)]).all()


def test_examples():
    two_by_two = boolean_lattice(2)
    assert not is_isomorphic(two_by_two, chain_lattice(4))
    assert not is_isomorphic(m3_lattice(), n5_lattice())
    assert not is_isomorphic(chain_lattice(3), chain_lattice(4))
    v = is_isomorphic(lattice_of_family(tangent_family(3)), boolean_lattice(3))
    assert v and len(v.witness) == 8


def test_witness_is_an_isomorphism(seven):
    # three overlapping circles give the same lattice under other labels
    other = lattice_of_family(CircleFamily.collinear([(0, 2), (3, 2), (6, 2)], ["P", "Q", "R"]))
    v = is_isomorphic(seven, other)
    assert v and _is_order_isomorphism(seven, other, v.witness)
    assert v.witness["{A}"] in ("{P}", "{R}")
    assert not is_isomorphic(seven, seven.dual())


@given(st.integers(0, len(SMALL) - 1), st.integers(0, 10**6))
def test_relabelled_copy_is_isomorphic(k, seed):
    L = SMALL[k]
    M, _ = _relabel(L, seed)
    v = is_isomorphic(L, M)
    assert v and _is_order_isomorphism(L, M, v.witness)
    assert invariant(L) == invariant(M)


def test_agrees_with_permutation_search():
    same_size = [L for L in SMALL if L.n <= 7]
    for L1, L2 in combinations(same_size, 2):
        if L1.n == L2.n:
            assert is_isomorphic(L1, L2).holds == isomorphic_brute(L1, L2)
