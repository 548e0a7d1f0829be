import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from satake_fans.fans import cone_Ct_of_Q, weyl_cone
from satake_fans.rootsys import all_bases, all_subsets, build_root_datum
from satake_fans.weights import (
    HighestWeight,
    WeightError,
    admissible_sets,
    compare_CY_fan_with_Ft,
    cone_CY,
    fundamental_and_rho,
    highest_weight_wrt_basis,
    is_admissible_graph,
    is_admissible_support,
    is_faithful_shadow,
    lowest_support_singletons,
    reflection_witness,
    rep_types,
    support,
    weight_system,
    y_star,
    z_set,
)

from oracles import saturated_weights

SWEEP = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")


def rep(label, coeffs):
    rd = build_root_datum(label)
    return rd, weight_system(rd, HighestWeight.from_fundamental(rd, coeffs))


A2, STD = rep("A2", (1, 0))
_, ADJ = rep("A2", (1, 1))
W1 = STD.lam
A1_ = (1, 0)
A2_ = (0, 1)


def minus(mu, *roots):
    out = list(mu)
    for r in roots:
        out = [a - b for a, b in zip(out, r)]
    return tuple(out)


def test_weight_sets_a2_a1():
    assert set(STD.weights) == {W1, minus(W1, A1_), minus(W1, A1_, A2_)}
    assert len(ADJ.weights) == 7
    assert set(ADJ.weights) == {tuple(Fraction(x) for x in r) for r in A2.roots} | {(0, 0)}
    _, a1 = rep("A1", (1,))
    assert len(a1.weights) == 2


@pytest.mark.parametrize("label", SWEEP)
def test_weight_system_matches_string_closure(label):
    rd = build_root_datum(label)
    for _, hw in fundamental_and_rho(rd):
        ws = weight_system(rd, hw)
        oracle = saturated_weights(hw.lam, rd.positive_roots, rd.coroot_pairing)
        assert set(ws.weights) == oracle
        # W-stable and below the highest weight
        for w in rd.weyl[:8]:
            assert all(tuple(Fraction(x) for x in w.apply(mu)) in ws for mu in ws.weights)
        for mu in ws.weights:
            support(rd, ws.highest, mu)


def test_non_dominant_rejected():
    with pytest.raises(WeightError):
        HighestWeight.from_fundamental(A2, (1, -1))
    with pytest.raises(WeightError):
        weight_system(A2, HighestWeight((Fraction(-1), Fraction(0))))
    with pytest.raises(WeightError):
        support(A2, STD.highest, (Fraction(5), Fraction(5)))


def test_supports_and_z():
    assert support(A2, STD.highest, W1) == frozenset()
    assert support(A2, STD.highest, minus(W1, A1_)) == {0}
    assert support(A2, STD.highest, minus(W1, A1_, A2_)) == {0, 1}
    assert z_set(A2, STD) == {1}
    assert z_set(A2, ADJ) == frozenset()
    rd1, a1 = rep("A1", (1,))
    assert z_set(rd1, a1) == frozenset()


def test_highest_weight_per_basis():
    bases = all_bases(A2)
    ident = next(w for w, _ in bases if not w.word)
    assert highest_weight_wrt_basis(A2, STD, ident) == W1
    s1 = next(w for w, _ in bases if w.word == (0,))
    assert highest_weight_wrt_basis(A2, STD, s1) == minus(W1, A1_)
    for w, _ in bases:
        highest_weight_wrt_basis(A2, ADJ, w)


def test_admissibility_examples():
    assert not is_admissible_graph(A2, STD, {1})
    assert is_admissible_graph(A2, STD, {0, 1})
    assert is_admissible_graph(A2, STD, frozenset())
    ok, mu = is_admissible_support(A2, STD, {0})
    assert ok and mu == minus(W1, A1_)
    assert is_admissible_support(A2, STD, {1}) == (False, None)
    ok, mu = is_admissible_support(A2, ADJ, {1})
    assert ok and mu == (1, 0)


def test_reflection_witness_examples():
    wit = reflection_witness(A2, STD, {0})
    assert wit.sequence == (0,) and wit.weight == minus(W1, A1_)
    wit = reflection_witness(A2, STD, {0, 1})
    assert wit.sequence == (0, 1) and wit.weight == minus(W1, A1_, A2_)
    wit = reflection_witness(A2, ADJ, {0})
    assert wit.sequence == (0,) and wit.weight == (0, 1)
    with pytest.raises(Exception):
        reflection_witness(A2, STD, {1})


@pytest.mark.parametrize("label", SWEEP)
def test_two_admissibility_criteria_agree(label):
    rd = build_root_datum(label)
    for _, hw in fundamental_and_rho(rd):
        ws = weight_system(rd, hw)
        for y in all_subsets(rd.rank):
            graph = is_admissible_graph(rd, ws, y)
            assert graph == is_admissible_support(rd, ws, y)[0]
            if graph:
                wit = reflection_witness(rd, ws, y)
                assert support(rd, ws.highest, wit.weight) == y
                for k, sup in enumerate(wit.prefix_supports):
                    assert sup == frozenset(wit.sequence[:k + 1])


def test_y_star_and_cones():
    assert y_star(A2, STD, frozenset()) == {1}
    assert y_star(A2, STD, {0}) == frozenset()
    assert all(y_star(A2, ADJ, y) == frozenset() for y in all_subsets(2))
    c = cone_CY(A2, STD, frozenset())
    assert set(c.ineqs) == {(-1, 0), (-1, -1)}
    assert cone_CY(A2, STD, {0, 1}).dim == 0
    rd1, a1 = rep("A1", (1,))
    assert cone_CY(rd1, a1, frozenset()).rays == ((1,),)


def test_types():
    t = rep_types(A2, STD)
    assert t.tau.y == {1} and t.t_rho_check.y == {0}
    t = rep_types(A2, ADJ)
    assert t.tau.y == frozenset() == t.t_rho_check.y
    rd1, a1 = rep("A1", (1,))
    assert rep_types(rd1, a1).tau.y == frozenset()


@pytest.mark.parametrize("label", ("A2", "B2", "G2", "A3"))
def test_type_is_independent_of_the_base(label):
    rd = build_root_datum(label)
    for _, hw in fundamental_and_rho(rd):
        ws = weight_system(rd, hw)
        tau = z_set(rd, ws)
        for w, basis in all_bases(rd):
            lam = highest_weight_wrt_basis(rd, ws, w)
            z_prime = {b for b in basis if rd.inner(lam, b) == 0}
            assert z_prime == {tuple(int(x) for x in w.apply(rd.simple_roots[i])) for i in tau}


def test_fan_comparison_examples():
    r = compare_CY_fan_with_Ft(A2, STD)
    assert r.passed and len(r.admissible) == 3
    assert set(r.relevant) == {frozenset({1}), frozenset({0}), frozenset({0, 1})}
    r = compare_CY_fan_with_Ft(A2, ADJ)
    assert r.passed and len(r.admissible) == 4
    for y in all_subsets(2):
        assert cone_CY(A2, ADJ, y) == weyl_cone(A2, y)
    rd1, a1 = rep("A1", (1,))
    assert len(compare_CY_fan_with_Ft(rd1, a1).admissible) == 2


@pytest.mark.parametrize("label", SWEEP)
def test_cone_equality_sweep(label):
    rd = build_root_datum(label)
    for _, hw in fundamental_and_rho(rd):
        ws = weight_system(rd, hw)
        r = compare_CY_fan_with_Ft(rd, ws)
        assert r.passed, r.cone_mismatches
        assert lowest_support_singletons(rd, ws)


def test_unfaithful_weight_warns():
    rd, ws = rep("A1xA1", (1, 0))
    assert not is_faithful_shadow(rd, ws)
    with pytest.warns(UserWarning):
        compare_CY_fan_with_Ft(rd, ws)


@given(st.sampled_from(("A2", "B2", "G2")), st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_admissible_sets_have_exact_witnesses(label, coeffs):
    rd = build_root_datum(label)
    ws = weight_system(rd, HighestWeight.from_fundamental(rd, coeffs))
    z = z_set(rd, ws)
    for a in admissible_sets(rd, ws):
        assert support(rd, ws.highest, a.witness) == a.y
        # each component of Y meets the complement of Z
        for comp in rd.dynkin_components(a.y):
            assert comp - z
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if any(coeffs):
            r = compare_CY_fan_with_Ft(rd, ws)
            assert not r.cone_mismatches
            for y in r.admissible:
                assert cone_CY(rd, ws, y) == cone_Ct_of_Q(rd, z, y)
