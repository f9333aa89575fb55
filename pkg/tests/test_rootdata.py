from __future__ import annotations


import pytest
from hypothesis import given
from hypothesis import strategies as st

from stokesbraid.errors import ConfigurationError
from stokesbraid.rootdata import (
    CENTER_TABLE_ROWS,
    WeylElement,
    build_root_system,
    center_group,
    coxeter_element,
    elements,
    exponent_divides_coxeter,
    fixed_space_dimension,
    is_elliptic,
    longest_element,
    weyl_group_order,
)

ALL_TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4),
    ("D", 5), ("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8),
]
TABLE_H = {"A": lambda r: r + 1, "B": lambda r: 2 * r, "C": lambda r: 2 * r,
           "D": lambda r: 2 * (r - 1)}
EXCEPTIONAL_H = {("E", 6): 12, ("E", 7): 18, ("E", 8): 30, ("F", 4): 12, ("G", 2): 6}


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_cartan_and_root_count(t, r):
    rs = build_root_system(t, r)
    C = rs.cartan_matrix
    assert all(C[i][i] == 2 for i in range(r))
    assert all(C[i][j] <= 0 for i in range(r) for j in range(r) if i != j)
    h = EXCEPTIONAL_H.get((t, r)) or TABLE_H[t](r)
    assert rs.coxeter_number == h
    assert r * h == 2 * rs.num_positive_roots


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_coxeter_element_order_and_ellipticity(t, r):
    rs = build_root_system(t, r)
    c = coxeter_element(rs)
    assert c.length() == r
    assert c.order() == rs.coxeter_number
    assert is_elliptic(rs, c)


def test_small_examples():
    a1 = build_root_system("A", 1)
    assert (a1.rank, a1.coxeter_number, a1.num_positive_roots) == (1, 2, 1)
    assert build_root_system("G", 2).num_positive_roots == 6
    assert build_root_system("A", 2).num_positive_roots == 3
    assert coxeter_element(build_root_system("A", 2)).word == (1, 2)
    assert coxeter_element(a1).order() == 2


def test_invalid_types_rejected():
    for t, r in [("B", 1), ("D", 3), ("E", 5), ("G", 3), ("Z", 2), ("A", 0)]:
        with pytest.raises(ConfigurationError):
            build_root_system(t, r)


def test_ellipticity_examples():
    rs = build_root_system("A", 2)
    assert not is_elliptic(rs, WeylElement.simple(rs, 1))
    # brute force: the elliptic elements of S_3 are exactly the two 3-cycles
    elliptic = [w for w in elements(rs) if is_elliptic(rs, w)]
    assert len(elliptic) == 2
    assert not is_elliptic(rs, longest_element(rs))


@pytest.mark.parametrize("t,r,l0", [("A", 1, 1), ("A", 2, 3), ("B", 2, 4), ("G", 2, 6), ("D", 4, 12)])
def test_longest_element(t, r, l0):
    rs = build_root_system(t, r)
    w0 = longest_element(rs)
    assert w0.length() == l0 == rs.num_positive_roots
    # brute force: w0 is the unique element of maximal length
    ws = elements(rs)
    assert len(ws) == weyl_group_order(rs)
    assert max(ws, key=lambda w: w.length()) == w0


def test_weyl_orders():
    expected = {("A", 3): 24, ("B", 3): 48, ("G", 2): 12, ("D", 4): 192, ("F", 4): 1152}
    for (t, r), order in expected.items():
        assert weyl_group_order(build_root_system(t, r)) == order
    assert len(elements(build_root_system("B", 3))) == 48


@pytest.mark.parametrize(
    "t,r,structure,h",
    [("D", 5, (4,), 8), ("E", 6, (3,), 12), ("E", 8, (), 30), ("D", 4, (2, 2), 6), ("B", 3, (2,), 6)],
)
def test_center_examples(t, r, structure, h):
    rs = build_root_system(t, r)
    Z = center_group(rs)
    assert Z.structure == structure
    assert rs.coxeter_number == h
    assert exponent_divides_coxeter(rs)


def test_center_table_has_ten_rows_all_dividing():
    assert len(CENTER_TABLE_ROWS) == 10
    for _, t, ranks in CENTER_TABLE_ROWS:
        for r in ranks:
            assert exponent_divides_coxeter(build_root_system(t, r))


def test_identity_action():
    rs = build_root_system("B", 3)
    e = WeylElement.identity(rs)
    assert e.root_action == tuple(range(len(rs.roots)))
    assert e.length() == 0


WORD_TYPES = [("A", 3), ("B", 3), ("G", 2), ("D", 4)]


@st.composite
def weyl_words(draw):
    t, r = draw(st.sampled_from(WORD_TYPES))
    rs = build_root_system(t, r)
    word = draw(st.lists(st.integers(1, r), max_size=14))
    return rs, word


@given(weyl_words())
def test_length_properties(data):
    rs, word = data
    w = WeylElement.from_word(rs, word)
    inverted = sum(1 for k in range(rs.num_positive_roots) if not rs.is_positive(w.root_action[k]))
    assert w.length() == inverted == len(w.word)
    assert w.inverse().length() == w.length()
    assert WeylElement.from_word(rs, w.word) == w
    assert (w * w.inverse()).is_identity()


@given(weyl_words(), weyl_words())
def test_faithful_action_compatible_with_generators(a, b):
    rs, word = a
    w = WeylElement.from_word(rs, word)
    v = WeylElement.from_word(rs, list(w.word))
    for i in range(1, rs.rank + 1):
        s = WeylElement.simple(rs, i)
        assert (w * s) == (v * s) and (s * w) == (s * v)


@given(weyl_words())
def test_fixed_space_matches_conjugacy(data):
    rs, word = data
    w = WeylElement.from_word(rs, word)
    c = coxeter_element(rs)
    # ellipticity is a class function
    assert fixed_space_dimension(rs, w * c * w.inverse()) == 0
    assert fixed_space_dimension(rs, w) == fixed_space_dimension(rs, w.inverse())
