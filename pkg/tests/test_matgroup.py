from __future__ import annotations


import pytest
from hypothesis import given
from hypothesis import strategies as st

from stokesbraid import linalg
from stokesbraid.errors import ConfigurationError
from stokesbraid.fields import GF, QQ
from stokesbraid.matgroup import (
    BorelPoint,
    ClassSpec,
    FixedTorusDescription,
    GroupElement,
    GroupSpec,
    ad_weyl_diag,
    all_flags,
    alpha,
    b_matrix,
    bruhat_position,
    class_membership,
    flag_canonical,
    group_order,
    is_regular,
    perm_to_weyl,
    pgl_normalize,
    relative_position,
    simple_reflection_lift,
    torus_fixed_points,
    weyl_lift,
    weyl_to_perm,
)
from stokesbraid.rootdata import WeylElement, coxeter_element, elements

SL2 = GroupSpec("SL", 2, QQ)


def test_reflection_lift():
    assert simple_reflection_lift(SL2, 1) == ((0, -1), (1, 0))
    s = simple_reflection_lift(GroupSpec("SL", 3, QQ), 2)
    assert s == ((1, 0, 0), (0, 0, -1), (0, 1, 0))
    assert linalg.matmul(QQ, simple_reflection_lift(SL2, 1), simple_reflection_lift(SL2, 1)) == ((-1, 0), (0, -1))


def test_b_matrix_examples():
    assert b_matrix(SL2, 1, 5) == ((5, -1), (1, 0))
    assert b_matrix(SL2, 1, 0) == simple_reflection_lift(SL2, 1)


def test_torus_intertwining_sl2_example():
    F = GF(11)
    G = GroupSpec("SL", 2, F)
    a, z = 3, 7
    t = linalg.diag(F, [a, F.inv(a)])
    lhs = linalg.matmul(F, t, b_matrix(G, 1, z))
    rhs = linalg.matmul(F, b_matrix(G, 1, F.mul(F.mul(a, a), z)), linalg.diag(F, [F.inv(a), a]))
    assert lhs == rhs


@given(st.sampled_from([5, 7, 11, 13]), st.integers(2, 5), st.data())
def test_torus_intertwining(p, n, data):
    F = GF(p)
    G = GroupSpec("GL", n, F)
    t = [data.draw(st.integers(1, p - 1)) for _ in range(n)]
    z = data.draw(st.integers(0, p - 1))
    i = data.draw(st.integers(1, n - 1))
    swapped = t[: i - 1] + [t[i], t[i - 1]] + t[i + 1 :]
    lhs = linalg.matmul(F, linalg.diag(F, t), b_matrix(G, i, z))
    rhs = linalg.matmul(F, b_matrix(G, i, F.mul(alpha(G, i, t), z)), linalg.diag(F, swapped))
    assert lhs == rhs


def test_bruhat_examples():
    assert bruhat_position(SL2, linalg.identity(QQ, 2)).is_identity()
    s1 = WeylElement.simple(SL2.root_system, 1)
    assert bruhat_position(SL2, simple_reflection_lift(SL2, 1)) == s1
    assert bruhat_position(SL2, b_matrix(SL2, 1, 4)) == s1
    B = BorelPoint.base(SL2)
    sB = B.translate(simple_reflection_lift(SL2, 1))
    assert relative_position(SL2, B, B).is_identity()
    assert relative_position(SL2, B, sB) == s1 == relative_position(SL2, sB, B)


def _random_upper(F, n, rng):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = rng.randrange(1, F.characteristic)
        for j in range(i + 1, n):
            M[i][j] = rng.randrange(F.characteristic)
    return tuple(tuple(r) for r in M)


@given(st.integers(2, 4), st.sampled_from([5, 7]), st.randoms(use_true_random=False))
def test_bruhat_invariance_and_lifts(n, p, rng):
    F = GF(p)
    G = GroupSpec("GL", n, F)
    rs = G.root_system
    w = rng.choice(elements(rs))
    g = weyl_lift(G, w)
    b1, b2 = _random_upper(F, n, rng), _random_upper(F, n, rng)
    assert bruhat_position(G, linalg.matmul(F, linalg.matmul(F, b1, g), b2)) == w
    assert perm_to_weyl(rs, weyl_to_perm(w)) == w


@given(st.integers(2, 3), st.randoms(use_true_random=False))
def test_relative_position_inverse(n, rng):
    F = GF(5)
    G = GroupSpec("GL", n, F)
    flags = all_flags(G)
    x, y = BorelPoint(G, rng.choice(flags)), BorelPoint(G, rng.choice(flags))
    assert relative_position(G, x, y) == relative_position(G, y, x).inverse()


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_bruhat_cell_sizes(n, q):
    F = GF(q)
    G = GroupSpec("GL", n, F)
    rs = G.root_system
    flags = all_flags(G)
    # sum over cells of q^l(w) flags equals |G/B|, and each cell has the expected size
    sizes = {}
    base = BorelPoint.base(G)
    for f in flags:
        w = relative_position(G, base, BorelPoint(G, f))
        sizes[w] = sizes.get(w, 0) + 1
    assert all(sizes[w] == q ** w.length() for w in elements(rs))
    borel = (q - 1) ** n * q ** (n * (n - 1) // 2)
    assert sum(q ** w.length() for w in elements(rs)) * borel == group_order(G)
    assert len(flags) == len({flag_canonical(F, f) for f in flags})


def test_regularity_and_membership():
    assert not is_regular(SL2, linalg.identity(QQ, 2))
    u = ((1, 1), (0, 1))
    assert is_regular(SL2, u)
    assert class_membership(SL2, u, ClassSpec.regular(SL2, "x^2-2x+1"))
    assert class_membership(SL2, b_matrix(SL2, 1, 3), ClassSpec.regular(SL2, "x^2-3x+1"))
    assert not class_membership(SL2, linalg.identity(QQ, 2), ClassSpec.regular(SL2, "x^2-2x+1"))
    with pytest.raises(ConfigurationError):
        ClassSpec.regular(SL2, "x^2-3x+2")


@given(st.sampled_from([7, 11]), st.randoms(use_true_random=False))
def test_membership_conjugation_invariant(p, rng):
    F = GF(p)
    for family in ("SL", "PGL"):
        G = GroupSpec(family, 3, F)
        g = linalg.matmul(F, b_matrix(G, 1, rng.randrange(p)), b_matrix(G, 2, rng.randrange(p)))
        h = linalg.matmul(F, _random_upper(F, 3, rng), weyl_lift(G, rng.choice(elements(G.root_system))))
        conj = linalg.matmul(F, linalg.matmul(F, h, g), linalg.inverse(F, h))
        cls = ClassSpec.of_element(GroupSpec("SL", 3, F), g)
        assert class_membership(G, g, cls) == class_membership(G, conj, cls) is True


def test_group_elements():
    with pytest.raises(ConfigurationError):
        GroupElement(SL2, ((2, 0), (0, 1)))
    F = GF(7)
    P = GroupSpec("PGL", 2, F)
    g = GroupElement(P, ((3, 1), (0, 2)))
    assert g.entries[0][0] == 1
    assert pgl_normalize(F, g.entries) == g.entries


def test_torus_fixed_points():
    c2 = coxeter_element(SL2.root_system)
    assert {t.entries for t in torus_fixed_points(SL2, c2)} == {((1, 0), (0, 1)), ((-1, 0), (0, -1))}
    P = GroupSpec("PGL", 2, GF(13))
    assert len(torus_fixed_points(P, c2)) == 2
    G3 = GroupSpec("SL", 3, GF(7))
    Tw = torus_fixed_points(G3, coxeter_element(G3.root_system))
    assert sorted(t.entries[0][0] for t in Tw) == [1, 2, 4]
    assert all(len(set(linalg_diag(t))) == 1 for t in Tw)
    assert len(torus_fixed_points(GroupSpec("SL", 3, QQ), coxeter_element(G3.root_system))) == 1
    assert isinstance(torus_fixed_points(G3, WeylElement.simple(G3.root_system, 1)), FixedTorusDescription)


def linalg_diag(t):
    return [t.entries[i][i] for i in range(len(t.entries))]


def test_ad_weyl_diag():
    rs = SL2.root_system
    sigma = weyl_to_perm(WeylElement.simple(rs, 1))
    assert ad_weyl_diag(sigma, (2, 3)) == (3, 2)
