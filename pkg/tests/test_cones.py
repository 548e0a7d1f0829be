import itertools
import random

import pytest
from hypothesis import assume, given, strategies as st

from satake_fans.cones import ConeError, RationalCone, hilbert_basis
from satake_fans.linalg import dot, rank

from oracles import h_contains, hilbert_basis_bruteforce, lp_in_conic_hull

vectors = lambda d: st.lists(st.integers(-4, 4), min_size=d, max_size=d).map(tuple)  # noqa: E731


@st.composite
def generator_sets(draw, dim=None):
    d = dim or draw(st.integers(1, 4))
    gens = draw(st.lists(vectors(d), min_size=0, max_size=6))
    return d, gens


@given(generator_sets())
def test_v_to_h_matches_lp_membership(case):
    d, gens = case
    c = RationalCone.from_generators(d, gens)
    rng = random.Random(len(gens) * 31 + d)
    probes = [tuple(rng.randint(-6, 6) for _ in range(d)) for _ in range(25)]
    probes += [tuple(sum(rng.randint(0, 3) * g[i] for g in gens) for i in range(d)) for _ in range(5)]
    for x in probes:
        assert c.contains_point(x) == lp_in_conic_hull(gens, x)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(vectors(d), min_size=0, max_size=6))))
def test_h_to_v_round_trip(case):
    d, ineqs = case
    c = RationalCone.from_inequalities(d, ineqs)
    for g in c.all_generators():
        assert h_contains(ineqs, g)
    again = RationalCone.from_generators(d, c.rays, c.lineality)
    assert again == c
    assert RationalCone.from_inequalities(d, c.ineqs, c.eqs) == c


@given(generator_sets())
def test_facets_are_irredundant_and_tight(case):
    d, gens = case
    c = RationalCone.from_generators(d, gens)
    for a in c.ineqs:
        tight = [g for g in c.all_generators() if dot(a, g) == 0]
        assert rank(tight) == c.dim - 1 if tight else c.dim == 1
        assert any(dot(a, g) < 0 for g in c.rays)


@given(generator_sets(dim=3))
def test_face_lattice_properties(case):
    d, gens = case
    c = RationalCone.from_generators(d, gens)
    faces = c.faces
    assert c in faces
    keys = {f.key for f in faces}
    for f, g in itertools.combinations(faces, 2):
        assert f.intersect(g).key in keys
        assert c.has_face(f)
    # every face is cut out by a supporting functional
    for f in faces:
        assert c.contains(f)


def test_known_cones():
    quad = RationalCone.from_generators(2, [(1, 0), (0, 1)])
    assert quad.ineqs == ((-1, 0), (0, -1))
    assert quad.dim == 2 and quad.is_pointed
    half = RationalCone.from_inequalities(2, [(0, -1)])
    assert not half.is_pointed and half.lineality == ((1, 0),)
    line = RationalCone.from_inequalities(2, [], [(1, 1)])
    assert line.dim == 1 and len(line.faces) == 1
    assert RationalCone.whole_space(3).dim == 3
    assert RationalCone.origin(3).dim == 0 and RationalCone.origin(3).faces == (RationalCone.origin(3),)
    assert len(quad.faces) == 4
    with pytest.raises(ConeError):
        RationalCone.from_inequalities(2, [(1, 2, 3)])


def test_pullback_and_coordinates():
    quad = RationalCone.from_generators(2, [(1, 0), (0, 1)])
    # (x, y) -> (x + y, x - y)
    pulled = quad.pullback([(1, 1), (1, -1)])
    for x in [(3, 1), (1, 3), (2, 0), (-1, 0)]:
        image = (x[0] + x[1], x[0] - x[1])
        assert pulled.contains_point(x) == quad.contains_point(image)
    lifted = quad.lift_coordinates((0, 2), 3)
    assert lifted.lineality == ((0, 1, 0),)
    assert lifted.drop_coordinates((0, 2)) == quad


@pytest.mark.parametrize("ineqs,dim,box", [
    ([(-1, 0), (2, -3)], 2, 4),
    ([(-1, 0), (3, -2)], 2, 4),
    ([(-1, 0), (0, -1)], 2, 2),
    ([(1, -2), (-2, 1)], 2, 3),
    ([(-1, 0, 0), (0, -1, 0), (1, 1, -2)], 3, 2),
])
def test_hilbert_basis_matches_bruteforce(ineqs, dim, box):
    assert sorted(hilbert_basis(ineqs, dim)) == hilbert_basis_bruteforce(ineqs, dim, box)


def test_hilbert_basis_with_lineality():
    hb = hilbert_basis([(0, -1)], 2)
    assert set(hb) == {(1, 0), (-1, 0), (0, 1)}


@given(st.lists(vectors(2), min_size=1, max_size=3))
def test_hilbert_basis_generates_lattice_points(ineqs):
    c = RationalCone.from_inequalities(2, ineqs)
    assume(c.is_pointed and c.dim == 2)
    hb = hilbert_basis(ineqs, 2)
    memo = {(0, 0): True}

    def generated(p):
        # subtracting a basis element stays in the pointed cone and lowers the grading
        if p not in memo:
            memo[p] = any(generated(q) for q in ((p[0] - h[0], p[1] - h[1]) for h in hb)
                          if h_contains(ineqs, q))
        return memo[p]

    for p in itertools.product(range(-3, 4), repeat=2):
        if h_contains(ineqs, p):
            assert generated(p)
