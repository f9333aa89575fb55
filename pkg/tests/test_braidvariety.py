from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import greedy_demazure_length, hecke_count, hecke_polynomial
from stokesbraid.braidmonoid import (
    BraidWord,
    braid_moves,
    coxeter_braid,
    half_twist,
    positive_lift,
)
from stokesbraid.braidvariety import (
    BraidVarietySpec,
    ModuliAnswer,
    airy_symbolic_sl2,
    airy_verify,
    count_by_flags,
    count_points,
    expected_dimension,
    finite_stabilizer_check,
    fit_monic_degree,
    kloosterman_verify,
    membership,
    monodromy,
    sample_points,
    solutions,
    stabilizer_fixed_space,
    torus_action,
)
from stokesbraid.errors import ResourceError
from stokesbraid.fields import GF, QQ
from stokesbraid.matgroup import ClassSpec, GroupSpec, diagonal_torus
from stokesbraid.rootdata import WeylElement, build_root_system, coxeter_element, elements, longest_element
from stokesbraid.steinberg import intersect_with_class, section

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
SL2 = GroupSpec("SL", 2, QQ)
SL3 = GroupSpec("SL", 3, QQ)


def spec(group, letters, target_word):
    rs = group.root_system
    target = None if target_word is None else WeylElement.from_word(rs, target_word)
    return BraidVarietySpec(group, BraidWord(rs, tuple(letters)), target)


def test_membership_examples():
    assert membership(spec(SL2, [1], [1]), [0])
    assert not membership(spec(SL2, [1], [1]), [1])
    s2 = spec(SL2, [1, 1], [1])
    assert membership(s2, [2, sympy.Rational(1, 2)])
    assert not membership(s2, [2, 2])
    assert membership(spec(SL2, [], []), [])


def test_monodromy_examples():
    assert monodromy(spec(SL2, [1], None), [3]) == ((3, -1), (1, 0))
    assert monodromy(spec(SL2, [1, 1], None), [1, 1]) == ((0, -1), (1, -1))
    assert monodromy(spec(SL2, [], None), []) == ((1, 0), (0, 1))


def test_expected_dimension_examples():
    assert expected_dimension(BraidWord(A1, (1, 1))) == 1
    assert expected_dimension(coxeter_braid(A2) * half_twist(A2)) == 2
    assert expected_dimension(positive_lift(longest_element(A2))) == 0


def test_count_examples():
    F7 = GroupSpec("SL", 2, GF(7))
    assert count_points(spec(F7, [1, 1], [1]), 7).raw_count == 6
    assert count_points(spec(F7, [1], [1]), 7).raw_count == 1
    rep = count_points(spec(SL2, [1], None), 7, ClassSpec.regular(SL2, "x^2-3x+1"))
    assert (rep.raw_count, rep.constrained_count) == (7, 1)
    assert rep.constrained_count <= rep.raw_count


def test_torus_action_sl2_example():
    F = GF(11)
    s2 = spec(GroupSpec("SL", 2, F), [1, 1], [1])
    a = 3
    z, t_out = torus_action(s2, (a, F.inv(a)), (5, F.inv(5)))
    assert z == (F.mul(9, 5), F.mul(F.inv(9), F.inv(5)))
    # two swaps: the torus element emerges unchanged
    assert t_out == (a, F.inv(a))


def test_stabilizer_fixed_space_examples():
    assert stabilizer_fixed_space(coxeter_braid(A2) * half_twist(A2), longest_element(A2)) == 0
    assert stabilizer_fixed_space(BraidWord(A2, (1,)), WeylElement.identity(A2)) == 1


@st.composite
def braid_specs(draw, max_len=6):
    n = draw(st.sampled_from([2, 3]))
    letters = draw(st.lists(st.integers(1, n - 1), min_size=0, max_size=max_len))
    rs = build_root_system("A", n - 1)
    target = draw(st.sampled_from(elements(rs)))
    return n, tuple(letters), target.word


@settings(max_examples=40)
@given(braid_specs(max_len=5), st.sampled_from([2, 3, 5]))
def test_counting_routes_agree_with_hecke_oracle(data, q):
    n, letters, target = data
    s = spec(GroupSpec("SL", n, GF(q)), letters, target)
    expected = hecke_count(n, letters, target, q)
    assert count_by_flags(s, q) == expected
    if q ** len(letters) <= 3125:
        assert count_points(s, q).raw_count == expected


@given(braid_specs(), st.sampled_from([5, 7]), st.randoms(use_true_random=False))
def test_membership_invariant_under_torus(data, p, rng):
    n, letters, target = data
    F = GF(p)
    s = spec(GroupSpec("SL", n, F), letters, target)
    t = rng.choice(list(diagonal_torus(s.group)))
    z = tuple(rng.randrange(p) for _ in letters)
    z2, _ = torus_action(s, t, z)
    assert membership(s, z) == membership(s, z2)


@settings(max_examples=25)
@given(braid_specs(max_len=6), st.randoms(use_true_random=False))
def test_braid_relation_invariance_of_counts(data, rng):
    n, letters, target = data
    moves = list(braid_moves(build_root_system("A", n - 1), letters))
    other = rng.choice(moves) if moves else letters
    for q in (3, 5, 7):
        a = count_by_flags(spec(GroupSpec("SL", n, GF(q)), letters, target), q)
        b = count_by_flags(spec(GroupSpec("SL", n, GF(q)), other, target), q)
        assert a == b


@given(st.sampled_from([2, 3, 4]), st.data())
def test_positive_lift_variety_is_a_point(n, data):
    rs = build_root_system("A", n - 1)
    w = data.draw(st.sampled_from(elements(rs)))
    for q in (2, 3) if n == 4 else (2, 3, 5):
        s = BraidVarietySpec(GroupSpec("SL", n, GF(q)), positive_lift(w), w)
        assert count_by_flags(s, q) == 1


@pytest.mark.parametrize("n,p", [(2, 5), (2, 7), (3, 5)])
def test_kloosterman_coherence(n, p):
    F = GF(p)
    G = GroupSpec("SL", n, F)
    c = coxeter_element(G.root_system)
    sec = section(G, c)
    s = BraidVarietySpec(G, coxeter_braid(G.root_system), None)
    for tail in range(p):
        poly = (1,) + (tail,) * (n - 1) + (F((-1) ** n),)
        cls = ClassSpec.regular(G, poly)
        assert sorted(solutions(s, p, cls)) == sorted(intersect_with_class(sec, cls))


def test_kloosterman_verify_examples():
    ans = kloosterman_verify(SL2, ClassSpec.regular(SL2, "x^2-3x+1"))
    assert ans.rigid and ans.stabilizer_order == 2 and ans.point_count_over_closure_surrogate == 1
    assert kloosterman_verify(SL3, ClassSpec.regular(SL3, "x^3-2x^2+2x-1")).rigid
    F = GF(13)
    P = GroupSpec("PGL", 2, F)
    ans = kloosterman_verify(P, ClassSpec.regular(P, "x^2-9x+1"))
    assert ans.rigid and ans.point_count_over_closure_surrogate == 2 and ans.all_passed


def test_moduli_answer_invariant():
    with pytest.raises(ValueError):
        ModuliAnswer(1, 2, 1, True)


def test_airy_sl2():
    sym = airy_symbolic_sl2()
    assert sym["matches_expected"] and sym["transitive"] and sym["stabilizer_order"] == 2
    ans = airy_verify(A1, SL2)
    assert ans.rigid and ans.all_passed and ans.stabilizer_order == 2
    assert ans.details["counts"] == {5: 4, 7: 6, 11: 10, 13: 12}


def test_airy_combinatorial_all_types():
    for t, r in [("A", 3), ("A", 4), ("B", 2), ("G", 2)]:
        assert airy_verify(build_root_system(t, r)).rigid


def test_fit_monic_degree():
    qs = [3, 5, 7, 11, 13]
    assert fit_monic_degree(qs, [q - 1 for q in qs]) == (1, [-1, 1])
    assert fit_monic_degree(qs, [(q - 1) ** 2 for q in qs]) == (2, [1, -2, 1])
    assert fit_monic_degree(qs, [1] * 5) == (0, [1])
    assert fit_monic_degree(qs, [2 * q for q in qs]) is None
    assert fit_monic_degree(qs, [0] * 5) is None
    # a degree-5 count needs a sixth sample to be over-determined
    quintic = [q**5 - 1 for q in qs]
    assert fit_monic_degree(qs, quintic) is None
    assert fit_monic_degree(qs + [17], quintic + [17**5 - 1]) == (5, [-1, 0, 0, 0, 0, 1])


@settings(max_examples=15)
@given(braid_specs(max_len=6))
def test_fit_degree_matches_oracle_polynomial(data):
    n, letters, target = data
    poly = hecke_polynomial(n, letters, target)
    qs = [3, 5, 7, 11, 13, 17]
    counts = [int(poly.eval(q)) for q in qs]
    fit = fit_monic_degree(qs, counts)
    if poly.is_zero or poly.LC() != 1:
        assert fit is None
    else:
        assert fit is not None and fit[0] == poly.degree()


def test_dimension_formula_for_top_cell():
    # X(beta, Dem(beta)) has dimension l(beta) - l(Dem(beta)), leading coefficient 1
    rng = random.Random(3)
    for _ in range(10):
        n = rng.choice([2, 3])
        letters = tuple(rng.randint(1, n - 1) for _ in range(rng.randint(0, 6)))
        poly = hecke_polynomial(n, letters, _dem_word(n, letters))
        assert poly.degree() == len(letters) - greedy_demazure_length(n, letters)
        assert poly.LC() == 1


def _dem_word(n, letters):
    from stokesbraid.braidmonoid import demazure_product

    return demazure_product(BraidWord(build_root_system("A", n - 1), letters)).word


def test_finite_stabilizer_check():
    s = BraidVarietySpec(SL3, coxeter_braid(A2) * half_twist(A2), longest_element(A2))
    rep = finite_stabilizer_check(s, 7, 3, random.Random(0))
    assert rep["elliptic"] and rep["passed"] and rep["fixed_torus_order"] == 3


def test_budget(monkeypatch):
    monkeypatch.setenv("STOKESBRAID_BUDGET", "100")
    with pytest.raises(ResourceError):
        count_points(spec(SL2, [1, 1, 1], [1]), 7)


@settings(max_examples=20)
@given(braid_specs(max_len=5), st.sampled_from([3, 5]), st.randoms(use_true_random=False))
def test_sampled_points_lie_on_the_variety(data, q, rng):
    n, letters, target = data
    s = spec(GroupSpec("SL", n, GF(q)), letters, target)
    total = count_by_flags(s, q)
    if total == 0:
        return
    k = min(total, 4)
    pts = sample_points(s, q, k, rng)
    assert len(pts) == k and all(membership(s, z) for z in pts)
    if total <= 4:
        assert pts == sorted(solutions(s, q))
