"""Positive braid monoid of a finite Weyl group.

Braid equality is decided by the left-greedy Garside normal form: the
simple elements of the monoid are the positive lifts of Weyl group
elements, and a factorisation ``x_1 ... x_k`` is normal when every adjacent
pair is left-weighted, ``L(x_{i+1}) ⊆ R(x_i)``. Leading half-twists are
collected into ``delta_power``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigurationError
from .rootdata import RootSystem, WeylElement, coxeter_element, longest_element


@dataclass(frozen=True)
class BraidWord:
    root_system: RootSystem
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        for i in self.letters:
            if not 1 <= i <= self.root_system.rank:
                raise ConfigurationError(
                    f"letter {i} out of range for {self.root_system.name}"
                )

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.root_system, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        return BraidWord(self.root_system, self.letters * k)

    def rotate(self, k: int) -> "BraidWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.root_system, self.letters[k:] + self.letters[:k])

    def image(self) -> WeylElement:
        """pi(beta): the image in W (not the Demazure product)."""
        return WeylElement.from_word(self.root_system, self.letters)

    def to_json(self) -> list:
        return list(self.letters)


@dataclass(frozen=True)
class GarsideNormalForm:
    delta_power: int
    simple_factors: tuple  # of WeylElement, none trivial, none equal to w0

    def to_json(self) -> dict:
        return {
            "delta_power": self.delta_power,
            "factors": [list(f.word) for f in self.simple_factors],
        }


def demazure_product(word: BraidWord) -> WeylElement:
    rs = word.root_system
    w = WeylElement.identity(rs)
    for i in word.letters:
        if i not in w.right_descents():
            w = w * WeylElement.simple(rs, i)
    return w


def positive_lift(w: WeylElement) -> BraidWord:
    return BraidWord(w.rs, w.word)


def _left_weight_pair(a: WeylElement, b: WeylElement) -> tuple[WeylElement, WeylElement]:
    """Move left descents of b that are not right descents of a across the boundary."""
    rs = a.rs
    while True:
        movable = b.left_descents() - a.right_descents()
        if not movable:
            return a, b
        s = WeylElement.simple(rs, min(movable))
        a, b = a * s, s * b


def normal_form(word: BraidWord) -> GarsideNormalForm:
    rs = word.root_system
    w0 = longest_element(rs)
    factors: list[WeylElement] = []
    # right-multiply one generator at a time, restoring left-weightedness
    for i in word.letters:
        factors.append(WeylElement.simple(rs, i))
        k = len(factors) - 1
        while k > 0:
            a, b = _left_weight_pair(factors[k - 1], factors[k])
            if (a, b) == (factors[k - 1], factors[k]):
                break
            factors[k - 1], factors[k] = a, b
            k -= 1
        while factors and factors[-1].is_identity():
            factors.pop()
    delta = 0
    while delta < len(factors) and factors[delta] == w0:
        delta += 1
    return GarsideNormalForm(delta, tuple(factors[delta:]))


def braid_equal(a: BraidWord, b: BraidWord) -> bool:
    if a.root_system != b.root_system or len(a) != len(b):
        return False
    return normal_form(a) == normal_form(b)


def cyclically_equivalent(a: BraidWord, b: BraidWord) -> bool:
    if a.root_system != b.root_system or len(a) != len(b):
        return False
    target = normal_form(b)
    return any(normal_form(a.rotate(k)) == target for k in range(max(len(a), 1)))


def full_twist(rs: RootSystem) -> BraidWord:
    return positive_lift(longest_element(rs)) ** 2


def half_twist(rs: RootSystem) -> BraidWord:
    return positive_lift(longest_element(rs))


def coxeter_braid(rs: RootSystem) -> BraidWord:
    return positive_lift(coxeter_element(rs))


def kloosterman_braid(rs: RootSystem) -> BraidWord:
    return coxeter_braid(rs)


def airy_braid(rs: RootSystem) -> BraidWord:
    return coxeter_braid(rs) ** (rs.coxeter_number + 1)


# -- independent oracle ----------------------------------------------------


def braid_moves(rs: RootSystem, letters: Sequence[int]) -> Iterable[tuple]:
    """All words reachable by one braid relation s_i s_j ... = s_j s_i ..."""
    n = len(letters)
    for i in range(1, rs.rank + 1):
        for j in range(1, rs.rank + 1):
            if i == j:
                continue
            m = rs.coxeter_matrix_entry(i, j)
            lhs = tuple(i if k % 2 == 0 else j for k in range(m))
            rhs = tuple(j if k % 2 == 0 else i for k in range(m))
            for pos in range(n - m + 1):
                if tuple(letters[pos : pos + m]) == lhs:
                    yield tuple(letters[:pos]) + rhs + tuple(letters[pos + m :])


def rewriting_class(word: BraidWord, limit: int = 200_000) -> set:
    """Every word braid-equivalent to ``word``, by breadth-first rewriting."""
    start = word.letters
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in braid_moves(word.root_system, cur):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise RuntimeError("rewriting class exceeds search limit")
                queue.append(nxt)
    return seen


def braid_equal_by_rewriting(a: BraidWord, b: BraidWord) -> bool:
    if a.root_system != b.root_system or len(a) != len(b):
        return False
    return b.letters in rewriting_class(a)
