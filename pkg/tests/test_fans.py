import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from satake_fans.cones import ConeError, RationalCone
from satake_fans.fans import (
    BoundaryPoint,
    FanError,
    build_fan_Ft,
    check_cone_chain,
    compactify_cone,
    cone_Ct_of_Q,
    cone_Ct_of_type_parabolic,
    extended_eval,
    is_degenerate,
    is_t_relevant,
    literal_cone_chain,
    quotient_metric,
    relevant_hull,
    smallest_t_relevant,
    span_equals_vanishing_locus,
    weyl_cone,
)
from satake_fans.rootsys import (
    all_parabolics,
    all_subsets,
    build_root_datum,
    parabolics_of_type,
    standard_parabolic,
)

from oracles import union_of_chambers_contains

A2 = build_root_datum("A2")
T2 = frozenset({1})
SWEEP = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
LIGHT = ("A1", "A2", "B2", "G2", "A3")


def test_weyl_cones_a2():
    chamber = weyl_cone(A2, frozenset())
    assert chamber.ineqs == ((-1, 0), (0, -1))
    # every root and its negative are nonnegative on the cone of the whole group
    assert weyl_cone(A2, frozenset({0, 1})) == RationalCone.origin(2)
    ray = weyl_cone(A2, frozenset({0}))
    assert ray.dim == 1 and ray.rays == ((0, 1),)


def test_neighbourhood_of_type_parabolic_a2():
    c = cone_Ct_of_type_parabolic(A2, T2, standard_parabolic(A2, T2))
    assert set(c.ineqs) == {(-1, 0), (-1, -1)}
    assert cone_Ct_of_type_parabolic(A2, frozenset(), standard_parabolic(A2, frozenset())) == \
        weyl_cone(A2, frozenset())
    assert cone_Ct_of_type_parabolic(A2, {0, 1}, standard_parabolic(A2, {0, 1})) == \
        RationalCone.whole_space(2)
    with pytest.raises(FanError):
        cone_Ct_of_type_parabolic(A2, T2, standard_parabolic(A2, frozenset({0})))


@pytest.mark.parametrize("label", ("A2", "B2", "G2", "A3", "B3"))
def test_neighbourhood_is_union_of_chambers(label):
    rd = build_root_datum(label)
    rng = random.Random(7)
    pos = rd.positive_roots
    for t in all_subsets(rd.rank):
        for p in parabolics_of_type(rd, t)[:4]:
            c = cone_Ct_of_type_parabolic(rd, t, p)
            for _ in range(40):
                u = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 3)) for _ in range(rd.rank))
                assert c.contains_point(u) == union_of_chambers_contains(
                    rd.weyl, rd.simple_roots, pos, p.roots, u)


def test_smallest_cone_examples_a2():
    maxi = cone_Ct_of_type_parabolic(A2, T2, standard_parabolic(A2, T2))
    assert cone_Ct_of_Q(A2, T2, frozenset()) == maxi
    face = cone_Ct_of_Q(A2, T2, frozenset({0}))
    assert face.dim == 1 and face.contains_point((0, 1)) and not face.contains_point((0, -1))
    for q in all_parabolics(A2):
        assert cone_Ct_of_Q(A2, frozenset(), q) == weyl_cone(A2, q)


def test_relevance_examples_a2():
    assert not is_t_relevant(A2, T2, frozenset())
    assert is_t_relevant(A2, T2, T2)
    assert smallest_t_relevant(A2, T2, frozenset()).y == T2
    assert smallest_t_relevant(A2, T2, frozenset({0})).y == frozenset({0})


@pytest.mark.parametrize("label", SWEEP)
def test_trivial_type_makes_everything_relevant(label):
    rd = build_root_datum(label)
    assert all(is_t_relevant(rd, frozenset(), y) for y in all_subsets(rd.rank))


@given(st.sampled_from(SWEEP), st.data())
def test_smallest_relevant_is_relevant_and_fixed(label, data):
    rd = build_root_datum(label)
    subsets = all_subsets(rd.rank)
    t = data.draw(st.sampled_from(subsets))
    y = data.draw(st.sampled_from(subsets))
    s = smallest_t_relevant(rd, t, y).y
    assert y <= s and is_t_relevant(rd, t, s)
    assert smallest_t_relevant(rd, t, s).y == s
    if is_t_relevant(rd, t, y):
        assert s == y
    assert cone_Ct_of_Q(rd, t, y) == cone_Ct_of_Q(rd, t, s)


def test_fan_counts_a2_a1():
    f0 = build_fan_Ft(A2, frozenset())
    assert len(f0.cones) == 13 and f0.cones_by_dim() == {0: 1, 1: 6, 2: 6}
    f2 = build_fan_Ft(A2, T2)
    assert len(f2.cones) == 7 and len(f2.maximal_cones()) == 3
    a1 = build_root_datum("A1")
    assert is_degenerate(a1, {0})
    fa = build_fan_Ft(a1, {0})
    assert fa.ambient_dim == 0 and len(fa.cones) == 1
    whole = build_fan_Ft(A2, {0, 1})
    assert len(whole.cones) == 1


@pytest.mark.parametrize("label", LIGHT)
def test_fan_axioms_and_relevancy(label):
    rd = build_root_datum(label)
    for t in all_subsets(rd.rank):
        fan = build_fan_Ft(rd, t)
        assert not fan.pairwise_face_violations(limit=1)
        assert fan.closed_under_faces() and fan.is_complete_exact()
        assert not fan.coverage_violations(200, seed=3)
        relevant = sum(len(parabolics_of_type(rd, y)) for y in all_subsets(rd.rank)
                       if is_t_relevant(rd, t, y))
        assert len(fan.cones) == relevant == len(fan.relevancy_index)


def test_mixed_degenerate_product():
    rd = build_root_datum("A1xA1")
    fan = build_fan_Ft(rd, {1})
    assert fan.ambient_dim == 1 and len(fan.cones) == 3
    assert fan.is_complete_exact()


@given(st.sampled_from(LIGHT), st.data())
def test_locate_puts_points_in_relative_interiors(label, data):
    rd = build_root_datum(label)
    t = data.draw(st.sampled_from(all_subsets(rd.rank)))
    fan = build_fan_Ft(rd, t, with_index=False)
    u = data.draw(st.lists(st.integers(-30, 30), min_size=fan.ambient_dim, max_size=fan.ambient_dim))
    c = fan.locate(u)
    assert c.in_relative_interior(u)
    assert sum(1 for d in fan.cones if d.in_relative_interior(u)) == 1


def test_compactified_cones():
    a1 = build_root_datum("A1")
    ray = weyl_cone(a1, frozenset())
    cc = compactify_cone(ray)
    assert len(cc.monoid_basis) == 1 and len(cc.faces) == 2
    chamber = compactify_cone(weyl_cone(A2, frozenset()))
    assert len(chamber.monoid_basis) == 2 and len(chamber.faces) == 4
    maxi = cone_Ct_of_type_parabolic(A2, T2, standard_parabolic(A2, T2))
    comp = compactify_cone(maxi)
    assert sorted(f.dim for f, _ in comp.faces) == [0, 1, 1, 2]
    # the origin keeps every character finite, the full cone only the trivial ones
    assert len(comp.stratum_of(RationalCone.origin(2))) == len(comp.monoid_basis)
    assert comp.stratum_of(maxi) == ()
    with pytest.raises(ConeError):
        compactify_cone(RationalCone.from_inequalities(2, [(0, -1)]))


def test_extended_evaluation_cases():
    maxi = cone_Ct_of_type_parabolic(A2, T2, standard_parabolic(A2, T2))
    fan = build_fan_Ft(A2, T2)
    x = BoundaryPoint.create(maxi, (0, 0))
    assert extended_eval(A2, T2, (1, 0), x, fan).tag == "infinite"
    assert extended_eval(A2, T2, (-1, 0), x, fan).tag == "zero"
    pt = BoundaryPoint.interior((Fraction(1, 2), 3))
    v = extended_eval(A2, T2, (1, 1), pt, fan)
    assert v.tag == "finite" and v.exponent == Fraction(7, 2)
    with pytest.raises(FanError):
        extended_eval(A2, T2, (1, 0), BoundaryPoint.create(weyl_cone(A2, frozenset()), (0, 0)), fan)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(0, 9))
def test_boundary_value_is_independent_of_representative(a, b, shift):
    fan = build_fan_Ft(A2, T2)
    ray = next(c for c in fan.cones if c.dim == 1)
    metric = quotient_metric(A2, fan.quotient_basis)
    p = BoundaryPoint.create(ray, (a, b), metric)
    moved = tuple(x + shift * r for x, r in zip((a, b), ray.rays[0]))
    q = BoundaryPoint.create(ray, moved, metric)
    assert p == q
    chi = next(c for c in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1)) if
               sum(x * y for x, y in zip(c, ray.rays[0])) == 0)
    assert extended_eval(A2, T2, chi, p, fan) == extended_eval(A2, T2, chi, q, fan)


def test_cone_chain_examples():
    assert check_cone_chain(A2, T2, frozenset())
    g2 = build_root_datum("G2")
    assert all(check_cone_chain(g2, t, q) for t in all_subsets(2) for q in all_parabolics(g2))
    for q in all_parabolics(A2):
        assert cone_Ct_of_Q(A2, frozenset(), q) == weyl_cone(A2, q)


@pytest.mark.parametrize("label", ("A2", "B2", "G2", "A3", "A1xA1"))
def test_literal_chain_holds_exactly_for_relevant_parabolics(label):
    rd = build_root_datum(label)
    for t in all_subsets(rd.rank):
        for q in all_parabolics(rd):
            assert literal_cone_chain(rd, t, q) == is_t_relevant(rd, t, q.y)
            hull = relevant_hull(rd, t, q)
            assert hull.roots >= q.roots and is_t_relevant(rd, t, hull.y)


def test_literal_chain_counterexample():
    # Borel with t = {2}: C_t(B) is a maximal cone of F_t, C_{empty}(B) only a chamber
    assert not literal_cone_chain(A2, T2, frozenset())
    assert check_cone_chain(A2, T2, frozenset())


@pytest.mark.parametrize("label", ("A2", "B2", "G2", "A3"))
def test_span_is_vanishing_locus(label):
    rd = build_root_datum(label)
    for t in all_subsets(rd.rank):
        for q in all_parabolics(rd):
            if is_t_relevant(rd, t, q.y):
                assert span_equals_vanishing_locus(rd, t, q)
