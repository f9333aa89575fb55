"""Root systems and Weyl groups of all simple types.

Conventions (Bourbaki numbering throughout):

* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``;
* roots are integer vectors in the simple-root basis, positive roots sorted
  by height and then so that simple roots appear in index order;
* simple reflections are indexed from 1, as in braid words.

A :class:`WeylElement` is its permutation of the root list. The stored word
is one reduced expression; it is *not* used for equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .errors import ConfigurationError, ResourceError
from .fields import QQ
from . import linalg

TYPES = ("A", "B", "C", "D", "E", "F", "G")
WEYL_ENUMERATION_LIMIT = 10**6


def _valid(type_label: str, rank: int) -> bool:
    if type_label == "A":
        return rank >= 1
    if type_label in ("B", "C"):
        return rank >= 2
    if type_label == "D":
        return rank >= 4
    if type_label == "E":
        return rank in (6, 7, 8)
    if type_label == "F":
        return rank == 4
    if type_label == "G":
        return rank == 2
    return False


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    if not _valid(type_label, rank):
        raise ConfigurationError(f"no simple root system of type {type_label}{rank}")
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i - 1][j - 1] = aij
        A[j - 1][i - 1] = aji

    if type_label in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if type_label == "B":
            link(n - 1, n, -1, -2)
        elif type_label == "C":
            link(n - 1, n, -2, -1)
    elif type_label == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif type_label == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif type_label == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif type_label == "G":
        link(1, 2, -3, -1)
    return tuple(tuple(r) for r in A)


def table_coxeter_number(type_label: str, rank: int) -> int:
    """Coxeter number from the classification table (not computed)."""
    if type_label == "A":
        return rank + 1
    if type_label in ("B", "C"):
        return 2 * rank
    if type_label == "D":
        return 2 * (rank - 1)
    return {("E", 6): 12, ("E", 7): 18, ("E", 8): 30, ("F", 4): 12, ("G", 2): 6}[
        (type_label, rank)
    ]


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: tuple
    positive_roots: tuple  # of integer tuples
    coxeter_number: int

    # derived tables, filled in by build_root_system
    roots: tuple = field(repr=False, default=())
    root_index: dict = field(repr=False, default_factory=dict)
    generator_actions: tuple = field(repr=False, default=())

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.type_label, self.rank) == (
            other.type_label,
            other.rank,
        )

    def __hash__(self):
        return hash((self.type_label, self.rank))

    def __repr__(self):
        return f"RootSystem({self.name})"

    def simple_root(self, i: int) -> tuple:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def reflect(self, i: int, root: Sequence[int]) -> tuple:
        pairing = sum(a * b for a, b in zip(self.cartan_matrix[i - 1], root))
        return tuple(r - (pairing if j == i - 1 else 0) for j, r in enumerate(root))

    def is_positive(self, root_idx: int) -> bool:
        return root_idx < self.num_positive_roots

    def negate_index(self, root_idx: int) -> int:
        N = self.num_positive_roots
        return root_idx + N if root_idx < N else root_idx - N

    def coxeter_matrix_entry(self, i: int, j: int) -> int:
        """Order of s_i s_j."""
        if i == j:
            return 1
        prod = self.cartan_matrix[i - 1][j - 1] * self.cartan_matrix[j - 1][i - 1]
        return {0: 2, 1: 3, 2: 4, 3: 6}[prod]

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "coxeter_number": self.coxeter_number,
            "num_positive_roots": self.num_positive_roots,
        }


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    type_label = type_label.upper()
    A = cartan_matrix(type_label, rank)

    def reflect(i, root):
        pairing = sum(a * b for a, b in zip(A[i - 1], root))
        return tuple(r - (pairing if j == i - 1 else 0) for j, r in enumerate(root))

    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(1, rank + 1):
                image = reflect(i, root)
                if all(c >= 0 for c in image) and image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    positive = tuple(sorted(found, key=lambda r: (sum(r), tuple(-c for c in r))))
    roots = positive + tuple(tuple(-c for c in r) for r in positive)
    index = {r: k for k, r in enumerate(roots)}
    gens = tuple(tuple(index[reflect(i, r)] for r in roots) for i in range(1, rank + 1))
    h = table_coxeter_number(type_label, rank)
    return RootSystem(type_label, rank, A, positive, h, roots, index, gens)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p ∘ q)[k] = p[q[k]]."""
    return tuple(p[k] for k in q)


@dataclass(frozen=True, eq=False)
class WeylElement:
    rs: RootSystem
    root_action: tuple  # image index of each root in rs.roots
    word: tuple  # a reduced word, letters in 1..rank

    @classmethod
    def identity(cls, rs: RootSystem) -> "WeylElement":
        return cls(rs, tuple(range(len(rs.roots))), ())

    @classmethod
    def from_word(cls, rs: RootSystem, word: Iterable[int]) -> "WeylElement":
        word = tuple(word)
        perm = tuple(range(len(rs.roots)))
        for i in word:
            if not 1 <= i <= rs.rank:
                raise ConfigurationError(f"letter {i} out of range for {rs.name}")
            perm = _compose(perm, rs.generator_actions[i - 1])
        w = cls(rs, perm, word)
        if w.length() != len(word):
            w = cls._from_action(rs, perm)
        return w

    @classmethod
    def simple(cls, rs: RootSystem, i: int) -> "WeylElement":
        return cls.from_word(rs, (i,))

    @classmethod
    def _from_action(cls, rs: RootSystem, perm: tuple) -> "WeylElement":
        return cls(rs, perm, _reduced_word(rs, perm))

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.rs == other.rs
            and self.root_action == other.root_action
        )

    def __hash__(self):
        return hash((self.rs.name, self.root_action))

    def __repr__(self):
        return f"WeylElement({self.rs.name}, word={self.word})"

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        perm = _compose(self.root_action, other.root_action)
        word = self.word + other.word
        w = WeylElement(self.rs, perm, word)
        if w.length() != len(word):
            w = WeylElement._from_action(self.rs, perm)
        return w

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.root_action)
        for k, img in enumerate(self.root_action):
            inv[img] = k
        return WeylElement(self.rs, tuple(inv), tuple(reversed(self.word)))

    def length(self) -> int:
        N = self.rs.num_positive_roots
        return sum(1 for k in range(N) if self.root_action[k] >= N)

    def is_identity(self) -> bool:
        return self.root_action == tuple(range(len(self.root_action)))

    def apply(self, root: Sequence[int]) -> tuple:
        return self.rs.roots[self.root_action[self.rs.root_index[tuple(root)]]]

    def right_descents(self) -> frozenset:
        """{i : l(w s_i) < l(w)}, i.e. w(alpha_i) < 0."""
        N = self.rs.num_positive_roots
        return frozenset(i for i in range(1, self.rs.rank + 1) if self.root_action[i - 1] >= N)

    def left_descents(self) -> frozenset:
        return self.inverse().right_descents()

    def inversion_set(self) -> frozenset:
        """Indices of positive roots sent to negative roots."""
        N = self.rs.num_positive_roots
        return frozenset(k for k in range(N) if self.root_action[k] >= N)

    def matrix(self) -> tuple:
        """Action on the root lattice: column j is w(alpha_j)."""
        cols = [self.rs.roots[self.root_action[j]] for j in range(self.rs.rank)]
        return tuple(tuple(cols[j][i] for j in range(self.rs.rank)) for i in range(self.rs.rank))

    def order(self) -> int:
        k, p = 1, self.root_action
        ident = tuple(range(len(p)))
        while p != ident:
            p = _compose(p, self.root_action)
            k += 1
        return k

    def to_json(self) -> dict:
        return {"type": self.rs.type_label, "rank": self.rs.rank, "word": list(self.word)}


def _reduced_word(rs: RootSystem, perm: tuple) -> tuple:
    """Peel off the smallest right descent until the identity is reached."""
    N = rs.num_positive_roots
    word: list[int] = []
    while True:
        desc = next((i for i in range(1, rs.rank + 1) if perm[i - 1] >= N), None)
        if desc is None:
            break
        word.append(desc)
        perm = _compose(perm, rs.generator_actions[desc - 1])
    return tuple(reversed(word))


def length(rs: RootSystem, w: WeylElement) -> int:
    return w.length()


def coxeter_element(rs: RootSystem) -> WeylElement:
    """c = s_1 s_2 ... s_rank."""
    return WeylElement.from_word(rs, range(1, rs.rank + 1))


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElement:
    N = rs.num_positive_roots
    perm = tuple(range(len(rs.roots)))
    word: list[int] = []
    while True:
        asc = next((i for i in range(1, rs.rank + 1) if perm[i - 1] < N), None)
        if asc is None:
            break
        perm = _compose(perm, rs.generator_actions[asc - 1])
        word.append(asc)
    return WeylElement(rs, perm, tuple(word))


def fixed_space_dimension(rs: RootSystem, w: WeylElement) -> int:
    """dim ker(M_w - I) on the rational span of the roots."""
    M = w.matrix()
    shifted = [[QQ(M[i][j] - (1 if i == j else 0)) for j in range(rs.rank)] for i in range(rs.rank)]
    return rs.rank - linalg.rank(QQ, shifted)


def is_elliptic(rs: RootSystem, w: WeylElement) -> bool:
    return fixed_space_dimension(rs, w) == 0


def weyl_group_order(rs: RootSystem) -> int:
    """|W| from the classical order formulas."""
    t, n = rs.type_label, rs.rank
    if t == "A":
        return math.factorial(n + 1)
    if t in ("B", "C"):
        return 2**n * math.factorial(n)
    if t == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[
        (t, n)
    ]


def elements(rs: RootSystem) -> list[WeylElement]:
    """Every element of W, breadth first. Refuses groups above the brute-force limit."""
    if weyl_group_order(rs) > WEYL_ENUMERATION_LIMIT:
        raise ResourceError(f"|W({rs.name})| exceeds {WEYL_ENUMERATION_LIMIT}")
    e = WeylElement.identity(rs)
    seen = {e.root_action: e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, rs.rank + 1):
                perm = _compose(w.root_action, rs.generator_actions[i - 1])
                if perm not in seen:
                    u = WeylElement(rs, perm, w.word + (i,))
                    seen[perm] = u
                    nxt.append(u)
        frontier = nxt
    return list(seen.values())


def element_from_positive_system(rs: RootSystem, positive: Iterable[int]) -> WeylElement:
    """The unique u with u(Phi+) = the given positive system (root indices)."""
    target = frozenset(positive)
    N = rs.num_positive_roots
    if len(target) != N:
        raise ConfigurationError("a positive system has exactly |Phi+| roots")
    current = set(target)
    word: list[int] = []
    # apply simple reflections to the system until it is the standard one
    while any(k >= N for k in current):
        i = next(
            (i for i in range(1, rs.rank + 1) if rs.negate_index(i - 1) in current),
            None,
        )
        if i is None:
            raise ConfigurationError("root set is not a positive system")
        act = rs.generator_actions[i - 1]
        current = {act[k] for k in current}
        word.append(i)
    u = WeylElement.from_word(rs, word)
    if frozenset(u.root_action[k] for k in range(N)) != target:
        raise ConfigurationError("root set is not a positive system")
    return u


# -- centers ---------------------------------------------------------------


@dataclass(frozen=True)
class CenterData:
    structure: tuple  # cyclic orders; () is the trivial group

    @property
    def order(self) -> int:
        return math.prod(self.structure)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.structure, 1)

    def label(self) -> str:
        if not self.structure:
            return "1"
        return " x ".join(f"Z/{k}" for k in self.structure)

    def to_json(self) -> dict:
        return {"structure": list(self.structure), "exponent": self.exponent, "label": self.label()}


def center_group(rs: RootSystem) -> CenterData:
    """Center of the simply connected group of this type."""
    t, n = rs.type_label, rs.rank
    if t == "A":
        return CenterData((n + 1,) if n >= 1 else ())
    if t in ("B", "C"):
        return CenterData((2,))
    if t == "D":
        return CenterData((2, 2) if n % 2 == 0 else (4,))
    return {
        ("E", 6): CenterData((3,)),
        ("E", 7): CenterData((2,)),
        ("E", 8): CenterData(()),
        ("F", 4): CenterData(()),
        ("G", 2): CenterData(()),
    }[(t, n)]


def exponent_divides_coxeter(rs: RootSystem) -> bool:
    return rs.coxeter_number % center_group(rs).exponent == 0


# The ten rows of the centers table, each with the ranks used to exercise it.
CENTER_TABLE_ROWS = (
    ("A_{n-1}", "A", (1, 2, 3, 4, 5, 6, 7)),
    ("B_n", "B", (2, 3, 4, 5, 6)),
    ("C_n", "C", (2, 3, 4, 5, 6)),
    ("D_n, n even", "D", (4, 6, 8)),
    ("D_n, n odd", "D", (5, 7)),
    ("E_6", "E", (6,)),
    ("E_7", "E", (7,)),
    ("E_8", "E", (8,)),
    ("F_4", "F", (4,)),
    ("G_2", "G", (2,)),
)
