from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_charpoly
from stokesbraid import linalg
from stokesbraid.errors import ConfigurationError
from stokesbraid.fields import GF, QQ, format_poly, is_squarefree, parse_field, parse_poly


def test_parse_poly_roundtrip():
    assert parse_poly("x^2-3x+1", QQ) == (1, -3, 1)
    assert parse_poly("x^3 - 2x^2 + 2x - 1", QQ) == (1, -2, 2, -1)
    assert parse_poly("x^2+4x+1", GF(13)) == (1, 4, 1)
    assert parse_poly("x^2-9x+1", GF(13)) == (1, 4, 1)
    assert format_poly(parse_poly("x^3-1", QQ)) == "x^3-1"
    with pytest.raises(ConfigurationError):
        parse_poly("2x^2+1", QQ)
    with pytest.raises(ConfigurationError):
        parse_poly("x^2+y", QQ)


def test_fields():
    assert parse_field("QQ") == QQ and parse_field("F_7") == GF(7)
    with pytest.raises(ConfigurationError):
        GF(9)
    F = GF(13)
    assert sorted(F.roots_of_unity(4)) == [1, 5, 8, 12]
    assert F(Fraction(1, 2)) == 7
    assert QQ.roots_of_unity(2) == [1, -1]
    assert sorted(F.nth_roots(4, 2)) == [2, 11]


def test_squarefree():
    assert is_squarefree(parse_poly("x^2-3x+1", QQ), QQ)
    assert not is_squarefree(parse_poly("x^2-2x+1", QQ), QQ)


matrices = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(matrices)
def test_charpoly_matches_sympy_over_q(rows):
    A = tuple(tuple(Fraction(x) for x in r) for r in rows)
    assert list(linalg.charpoly(QQ, A)) == sympy_charpoly(rows)


@given(matrices, st.sampled_from([5, 7, 13]))
def test_charpoly_matches_sympy_mod_p(rows, p):
    F = GF(p)
    A = tuple(tuple(F(x) for x in r) for r in rows)
    assert list(linalg.charpoly(F, A)) == sympy_charpoly(rows, p)


@given(matrices)
def test_det_rank_inverse(rows):
    A = tuple(tuple(Fraction(x) for x in r) for r in rows)
    M = sympy.Matrix(rows)
    assert linalg.det(QQ, A) == M.det()
    assert linalg.rank(QQ, A) == M.rank()
    if M.det() != 0:
        Ai = linalg.inverse(QQ, A)
        assert linalg.matmul(QQ, A, Ai) == linalg.identity(QQ, len(rows))


def test_cyclic():
    assert not linalg.is_cyclic(QQ, linalg.identity(QQ, 2))
    assert linalg.is_cyclic(QQ, ((1, 1), (0, 1)))
