"""Exact matrix models of SL_n, GL_n and PGL_n (type A_{n-1}).

Fixed conventions:

* B upper triangular, U strictly upper unipotent, T diagonal;
* the lift of s_i is the identity with ``[[0, -1], [1, 0]]`` in rows and
  columns (i, i+1);
* ``x_i(z) = I + z E_{i,i+1}`` and ``b_i(z) = x_i(z) * lift(s_i)``, so that
  ``t b_i(z) = b_i(alpha_i(t) z) Ad_{s_i}(t)`` with ``alpha_i(t) = t_i / t_{i+1}``;
* a permutation ``sigma`` (0-based tuple) corresponds to the Weyl element
  whose lift sends ``e_j`` to ``±e_{sigma[j]}``.

PGL elements are GL matrices normalised so the first nonzero entry (row
major) is 1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .errors import ConfigurationError
from .fields import FieldSpec, format_poly, parse_poly
from .rootdata import RootSystem, WeylElement, build_root_system

FAMILIES = ("SL", "GL", "PGL")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    field: FieldSpec

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown group family {self.family!r}")
        if self.n < 2:
            raise ConfigurationError("matrix size must be at least 2")

    @property
    def root_system(self) -> RootSystem:
        return build_root_system("A", self.n - 1)

    @property
    def F(self) -> FieldSpec:
        return self.field

    def label(self) -> str:
        return f"{self.family}_{self.n}({self.field.label()})"

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "field": self.field.to_json()}


def pgl_normalize(F: FieldSpec, A) -> tuple:
    for row in A:
        for x in row:
            if x != 0:
                return linalg.scale(F, F.inv(x), A)
    raise ZeroDivisionError("zero matrix")


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    entries: tuple

    def __post_init__(self):
        F = self.spec.field
        A = tuple(tuple(F(x) for x in row) for row in self.entries)
        if len(A) != self.spec.n or any(len(r) != self.spec.n for r in A):
            raise ConfigurationError("matrix has the wrong shape")
        d = linalg.det(F, A)
        if self.spec.family == "SL" and d != F.one:
            raise ConfigurationError("SL element must have determinant 1")
        if d == 0:
            raise ConfigurationError("matrix is singular")
        if self.spec.family == "PGL":
            A = pgl_normalize(F, A)
        object.__setattr__(self, "entries", A)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.spec, linalg.matmul(self.spec.field, self.entries, other.entries))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.spec, linalg.inverse(self.spec.field, self.entries))

    def to_json(self) -> list:
        return linalg.fmt_matrix(self.spec.field, self.entries)


def _m(g) -> tuple:
    return g.entries if isinstance(g, GroupElement) else g


# -- generators ------------------------------------------------------------


def simple_reflection_lift(spec: GroupSpec, i: int) -> tuple:
    n, F = spec.n, spec.field
    if not 1 <= i <= n - 1:
        raise ConfigurationError(f"simple reflection index {i} out of range")
    rows = [[F.one if r == c else F.zero for c in range(n)] for r in range(n)]
    a, b = i - 1, i
    rows[a][a] = rows[b][b] = F.zero
    rows[a][b] = F(-1)
    rows[b][a] = F.one
    return tuple(tuple(r) for r in rows)


def x_matrix(spec: GroupSpec, i: int, z) -> tuple:
    n, F = spec.n, spec.field
    return tuple(
        tuple(F.one if r == c else (F(z) if (r, c) == (i - 1, i) else F.zero) for c in range(n))
        for r in range(n)
    )


def b_matrix(spec: GroupSpec, i: int, z) -> tuple:
    """x_i(z) times the lift of s_i: rows/cols (i, i+1) hold [[z, -1], [1, 0]]."""
    n, F = spec.n, spec.field
    if not 1 <= i <= n - 1:
        raise ConfigurationError(f"simple reflection index {i} out of range")
    rows = [[F.one if r == c else F.zero for c in range(n)] for r in range(n)]
    a, b = i - 1, i
    rows[a][a] = F(z)
    rows[a][b] = F(-1)
    rows[b][a] = F.one
    rows[b][b] = F.zero
    return tuple(tuple(r) for r in rows)


def weyl_lift(spec: GroupSpec, w: WeylElement) -> tuple:
    """Product of the simple-reflection lifts along the stored reduced word."""
    F = spec.field
    M = linalg.identity(F, spec.n)
    for i in w.word:
        M = linalg.matmul(F, M, simple_reflection_lift(spec, i))
    return M


def weyl_to_perm(w: WeylElement) -> tuple:
    sigma = list(range(w.rs.rank + 1))
    for i in w.word:
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
    return tuple(sigma)


def perm_to_weyl(rs: RootSystem, sigma: Sequence[int]) -> WeylElement:
    sigma = list(sigma)
    word: list[int] = []
    while True:
        i = next((i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i]), None)
        if i is None:
            break
        word.append(i)
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
    return WeylElement.from_word(rs, reversed(word))


def alpha(spec: GroupSpec, i: int, t: Sequence):
    """Simple root character alpha_i(t) = t_i / t_{i+1} of a diagonal t."""
    F = spec.field
    return F.mul(t[i - 1], F.inv(t[i]))


def ad_weyl_diag(sigma: Sequence[int], t: Sequence) -> tuple:
    """Diagonal of lift(w) diag(t) lift(w)^-1: entry sigma[j] is t_j."""
    out = [None] * len(t)
    for j, s in enumerate(sigma):
        out[s] = t[j]
    return tuple(out)


def diag_entries(A) -> tuple:
    A = _m(A)
    return tuple(A[i][i] for i in range(len(A)))


# -- Bruhat decomposition and flags ----------------------------------------


def bruhat_perm(F: FieldSpec, g) -> tuple:
    """sigma with g in B lift(sigma) B, by column elimination from the left."""
    A = [list(r) for r in _m(g)]
    n = len(A)
    cols = [[A[r][c] for r in range(n)] for c in range(n)]
    sigma = []
    for j in range(n):
        col = cols[j]
        p = next((r for r in range(n - 1, -1, -1) if col[r] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        sigma.append(p)
        inv = F.inv(col[p])
        for k in range(j + 1, n):
            if cols[k][p] != 0:
                f = F.mul(cols[k][p], inv)
                cols[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(cols[k], col)]
    return tuple(sigma)


def bruhat_position(spec: GroupSpec, g) -> WeylElement:
    return perm_to_weyl(spec.root_system, bruhat_perm(spec.field, g))


def flag_canonical(F: FieldSpec, g) -> tuple:
    """Unique representative of the coset gB (reduced column echelon form)."""
    A = _m(g)
    n = len(A)
    cols = [[A[r][c] for r in range(n)] for c in range(n)]
    for j in range(n):
        col = cols[j]
        p = next((r for r in range(n - 1, -1, -1) if col[r] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        inv = F.inv(col[p])
        col = [F.mul(inv, x) for x in col]
        cols[j] = col
        for k in range(j + 1, n):
            if cols[k][p] != 0:
                f = cols[k][p]
                cols[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(cols[k], col)]
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class BorelPoint:
    """A point gB of the flag variety, stored by its canonical representative."""

    spec: GroupSpec
    rep: tuple = field()

    def __post_init__(self):
        object.__setattr__(self, "rep", flag_canonical(self.spec.field, _m(self.rep)))

    @classmethod
    def base(cls, spec: GroupSpec) -> "BorelPoint":
        return cls(spec, linalg.identity(spec.field, spec.n))

    def translate(self, g) -> "BorelPoint":
        return BorelPoint(self.spec, linalg.matmul(self.spec.field, _m(g), self.rep))


def relative_position(spec: GroupSpec, F1: BorelPoint, F2: BorelPoint) -> WeylElement:
    F = spec.field
    return bruhat_position(spec, linalg.matmul(F, linalg.inverse(F, F1.rep), F2.rep))


def all_flags(spec: GroupSpec) -> list[tuple]:
    """Every point of G/B over a finite field, as canonical representatives."""
    F = spec.field
    n = spec.n
    if not F.is_finite:
        raise ConfigurationError("flags can only be enumerated over a finite field")
    out = []
    for sigma in itertools.permutations(range(n)):
        # free entries: rows above the pivot of column j that are not earlier pivots
        free = [
            (r, j)
            for j in range(n)
            for r in range(sigma[j])
            if r not in sigma[:j]
        ]
        for vals in itertools.product(range(F.characteristic), repeat=len(free)):
            M = [[0] * n for _ in range(n)]
            for j in range(n):
                M[sigma[j]][j] = 1
            for (r, j), v in zip(free, vals):
                M[r][j] = v
            out.append(tuple(tuple(r) for r in M))
    return out


# -- conjugacy classes -----------------------------------------------------


@dataclass(frozen=True)
class ClassSpec:
    """A conjugacy class, by characteristic polynomial (regular) or by representative."""

    kind: str  # "regular-by-charpoly" | "explicit-representative"
    charpoly: tuple
    representative: tuple | None = None
    regular_flag: bool = True
    text: str = ""

    @classmethod
    def regular(cls, spec: GroupSpec, poly: str | Sequence) -> "ClassSpec":
        F = spec.field
        if isinstance(poly, str):
            coeffs = parse_poly(poly, F)
            text = poly
        else:
            coeffs = tuple(F(c) for c in poly)
            text = format_poly(coeffs)
        if len(coeffs) != spec.n + 1:
            raise ConfigurationError(
                f"characteristic polynomial must have degree {spec.n}, got {len(coeffs) - 1}"
            )
        if spec.family in ("SL", "PGL") and coeffs[-1] != F((-1) ** spec.n):
            raise ConfigurationError(
                f"class for {spec.family}_{spec.n} needs constant term {(-1) ** spec.n} (det 1 lift)"
            )
        if coeffs[-1] == 0:
            raise ConfigurationError("characteristic polynomial has zero constant term")
        return cls("regular-by-charpoly", coeffs, None, True, text)

    @classmethod
    def of_element(cls, spec: GroupSpec, g) -> "ClassSpec":
        F = spec.field
        A = _m(g)
        if not linalg.is_cyclic(F, A):
            return cls("explicit-representative", linalg.charpoly(F, A), A, False,
                       format_poly(linalg.charpoly(F, A)))
        return cls.regular(spec, linalg.charpoly(F, A))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "charpoly": format_poly(self.charpoly),
            "regular": self.regular_flag,
        }


def is_regular(spec: GroupSpec, g) -> bool:
    return linalg.is_cyclic(spec.field, _m(g))


def scalar_twists(spec: GroupSpec, g, target_det) -> list:
    """Scalars k with det(k g) = target_det."""
    F = spec.field
    d = linalg.det(F, _m(g))
    return F.nth_roots(F.mul(target_det, F.inv(d)), spec.n)


def class_membership(spec: GroupSpec, g, c: ClassSpec) -> bool:
    F = spec.field
    A = _m(g)
    if spec.family == "PGL":
        target_det = F.mul(F((-1) ** spec.n), c.charpoly[-1])
        lifts = [linalg.scale(F, k, A) for k in scalar_twists(spec, A, target_det)]
    else:
        lifts = [A]
    for L in lifts:
        if c.kind == "regular-by-charpoly":
            if linalg.charpoly(F, L) == c.charpoly and linalg.is_cyclic(F, L):
                return True
        elif similar(F, L, c.representative):
            return True
    return False


def similar(F: FieldSpec, A, B) -> bool:
    """Similarity over F via kernel dimensions of p(A)^k for irreducible factors p."""
    if linalg.charpoly(F, A) != linalg.charpoly(F, B):
        return False
    import sympy

    x = sympy.Symbol("x")
    cp = linalg.charpoly(F, A)
    expr = sum(sympy.Rational(str(c)) * x ** (len(cp) - 1 - k) for k, c in enumerate(cp))
    if F.is_finite:
        factors = sympy.factor_list(sympy.Poly(expr, x, modulus=F.characteristic))[1]
    else:
        factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))[1]
    n = len(A)
    for poly, mult in factors:
        coeffs = [F(Fraction(str(c))) for c in poly.all_coeffs()]
        PA, PB = _poly_at(F, coeffs, A), _poly_at(F, coeffs, B)
        QA, QB = linalg.identity(F, n), linalg.identity(F, n)
        for _ in range(mult):
            QA, QB = linalg.matmul(F, QA, PA), linalg.matmul(F, QB, PB)
            if linalg.rank(F, QA) != linalg.rank(F, QB):
                return False
    return True


def _poly_at(F: FieldSpec, coeffs: Sequence, A) -> tuple:
    n = len(A)
    R = tuple(tuple(F.zero for _ in range(n)) for _ in range(n))
    for c in coeffs:
        R = linalg.matmul(F, R, A)
        R = tuple(
            tuple(F.add(R[i][j], c if i == j else F.zero) for j in range(n)) for i in range(n)
        )
    return R


# -- fixed tori ------------------------------------------------------------


@dataclass(frozen=True)
class FixedTorusDescription:
    """T^w when it is positive dimensional: the cycle type and dimension."""

    dimension: int
    cycles: tuple

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "cycles": [list(c) for c in self.cycles]}


def perm_cycles(sigma: Sequence[int]) -> tuple:
    seen, cycles = set(), []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = sigma[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = sigma[j]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def torus_fixed_points(spec: GroupSpec, w: WeylElement):
    """T^w as a list of diagonal GroupElements, or a description when infinite."""
    F = spec.field
    sigma = weyl_to_perm(w)
    cycles = perm_cycles(sigma)
    dim = len(cycles) - (0 if spec.family == "GL" else 1)
    if dim > 0:
        return FixedTorusDescription(dim, cycles)
    n = spec.n
    out = []
    if spec.family == "SL":
        for a in F.roots_of_unity(n):
            out.append(GroupElement(spec, linalg.diag(F, [a] * n)))
    else:
        # t_{sigma^k(0)} = lam^k with lam^n = 1, normalised t_0 = 1
        for lam in F.roots_of_unity(n):
            t = [None] * n
            j, val = 0, F.one
            for _ in range(n):
                t[j] = val
                j, val = sigma[j], F.mul(val, lam)
            out.append(GroupElement(spec, linalg.diag(F, t)))
    return out


def is_torus_fixed(spec: GroupSpec, w: WeylElement, t: Sequence) -> bool:
    """Ad_w(t) = t, modulo scalars for PGL."""
    F = spec.field
    moved = ad_weyl_diag(weyl_to_perm(w), t)
    if spec.family != "PGL":
        return tuple(moved) == tuple(t)
    ratio = F.mul(moved[0], F.inv(t[0]))
    return all(m == F.mul(ratio, x) for m, x in zip(moved, t))


def diagonal_torus(spec: GroupSpec) -> Iterable[tuple]:
    """All diagonal entry tuples of T(F_q): det 1 for SL, t_0 = 1 for PGL."""
    F = spec.field
    units = list(F.units())
    n = spec.n
    if spec.family == "GL":
        yield from itertools.product(units, repeat=n)
    elif spec.family == "PGL":
        for rest in itertools.product(units, repeat=n - 1):
            yield (F.one,) + rest
    else:
        for rest in itertools.product(units, repeat=n - 1):
            prod = F.one
            for x in rest:
                prod = F.mul(prod, x)
            yield rest + (F.inv(prod),)


def group_order(spec: GroupSpec) -> int:
    q = spec.field.order
    if q is None:
        raise ConfigurationError("infinite group")
    n = spec.n
    gl = 1
    for k in range(n):
        gl *= q**n - q**k
    if spec.family == "GL":
        return gl
    return gl // (q - 1)
