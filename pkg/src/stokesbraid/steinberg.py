"""Steinberg and He-Lusztig cross-sections in type A.

A section point is ``point(z) = b_{i_1}(z_1) ... b_{i_r}(z_r)`` along the
stored reduced word of ``w``; this equals ``u * lift(w)`` with ``u`` in
``U ∩ w U^- w^-1``, so the same coordinates chart both the section and the
braid variety of ``w~``.
"""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import ConfigurationError, ResourceError, UnsupportedInputError
from .fields import FieldSpec
from .matgroup import (
    ClassSpec,
    GroupSpec,
    b_matrix,
    class_membership,
    is_regular,
    pgl_normalize,
    similar,
    weyl_lift,
    weyl_to_perm,
)
from .rootdata import WeylElement

SECTION_BUDGET = 10**7


def section_budget() -> int:
    return int(os.environ.get("STOKESBRAID_SECTION_BUDGET", SECTION_BUDGET))


def root_to_matrix_position(root: Sequence[int]) -> tuple[int, int]:
    """eps_i - eps_j (i < j) in simple-root coordinates -> matrix slot (i, j), 0-based."""
    nz = [k for k, c in enumerate(root) if c]
    return nz[0], nz[-1] + 1


@dataclass(frozen=True)
class SteinbergSection:
    spec: GroupSpec
    w: WeylElement
    coordinate_roots: tuple  # positive roots beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k})

    @property
    def word(self) -> tuple:
        return self.w.word

    @property
    def dimension(self) -> int:
        return len(self.coordinate_roots)

    def point(self, z: Sequence) -> tuple:
        if len(z) != self.dimension:
            raise ConfigurationError(f"expected {self.dimension} coordinates, got {len(z)}")
        F = self.spec.field
        M = linalg.identity(F, self.spec.n)
        for i, zk in zip(self.word, z):
            M = linalg.matmul(F, M, b_matrix(self.spec, i, zk))
        return M

    def lift(self) -> tuple:
        return weyl_lift(self.spec, self.w)

    def unipotent_part(self, z: Sequence) -> tuple:
        F = self.spec.field
        return linalg.matmul(F, self.point(z), linalg.inverse(F, self.lift()))

    def key(self, M) -> tuple:
        """Hashable identity of a group element (scalar class for PGL)."""
        return pgl_normalize(self.spec.field, M) if self.spec.family == "PGL" else M

    def to_json(self) -> dict:
        return {
            "group": self.spec.to_json(),
            "w": list(self.w.word),
            "coordinate_roots": [list(r) for r in self.coordinate_roots],
        }


def section(spec: GroupSpec, w: WeylElement) -> SteinbergSection:
    rs = spec.root_system
    if w.rs != rs:
        raise ConfigurationError("Weyl element belongs to a different root system")
    roots = []
    prefix = WeylElement.identity(rs)
    for i in w.word:
        roots.append(prefix.apply(rs.simple_root(i)))
        prefix = prefix * WeylElement.simple(rs, i)
    return SteinbergSection(spec, w, tuple(roots))


def in_section(sec: SteinbergSection, M) -> bool:
    """u = M lift(w)^-1 is unipotent upper triangular on the coordinate roots, and lift^-1 u lift is lower unipotent."""
    F = sec.spec.field
    lift = sec.lift()
    u = linalg.matmul(F, M, linalg.inverse(F, lift))
    if not linalg.is_upper_unipotent(F, u):
        return False
    allowed = {root_to_matrix_position(r) for r in sec.coordinate_roots}
    n = sec.spec.n
    if any(u[i][j] != 0 for i in range(n) for j in range(i + 1, n) if (i, j) not in allowed):
        return False
    conj = linalg.matmul(F, linalg.matmul(F, linalg.inverse(F, lift), u), lift)
    return linalg.is_lower_unipotent(F, conj)


# -- intersection with a class ---------------------------------------------


def _sl_charpoly_targets(spec: GroupSpec, c: ClassSpec) -> list[tuple]:
    """Characteristic polynomials of the det-1 lifts of the class."""
    F = spec.field
    if spec.family != "PGL":
        return [c.charpoly]
    out = []
    for k in F.roots_of_unity(spec.n):
        tw = tuple(F.mul(coef, F.pow(k, j)) for j, coef in enumerate(c.charpoly))
        if tw not in out:
            out.append(tw)
    return out


def intersect_closed_form(sec: SteinbergSection, c: ClassSpec) -> list[tuple]:
    """Solve charpoly(point(z)) = target by linear algebra (affine charpoly map)."""
    spec, F = sec.spec, sec.spec.field
    r = sec.dimension
    zero = tuple(F.zero for _ in range(r))
    base = linalg.charpoly(F, sec.point(zero))
    cols = []
    for k in range(r):
        e = tuple(F.one if j == k else F.zero for j in range(r))
        cp = linalg.charpoly(F, sec.point(e))
        cols.append([F.sub(a, b) for a, b in zip(cp, base)])
    A = [[cols[k][row] for k in range(r)] for row in range(len(base))]
    probes = [tuple(F(j + 2) for j in range(r)), tuple(F(3 * j + 1) for j in range(r))]
    for z in probes:
        predicted = tuple(
            F.add(base[row], linalg.sum_products(F, A[row], z)) for row in range(len(base))
        )
        if predicted != linalg.charpoly(F, sec.point(z)):
            raise UnsupportedInputError(
                "characteristic polynomial is not affine in the section coordinates"
            )
    if linalg.rank(F, A) != r:
        raise UnsupportedInputError("coefficient map is not injective; no closed form")
    points = []
    for target in _sl_charpoly_targets(spec, c):
        rhs = [F.sub(a, b) for a, b in zip(target, base)]
        z = linalg.solve(F, A, rhs)
        if z is not None and class_membership(spec, sec.point(z), c) and z not in points:
            points.append(z)
    return sorted(points)


def intersect_by_enumeration(sec: SteinbergSection, c: ClassSpec) -> list[tuple]:
    spec, F = sec.spec, sec.spec.field
    if not F.is_finite:
        raise ConfigurationError("enumeration needs a finite field")
    size = F.characteristic ** sec.dimension
    if size > section_budget():
        raise ResourceError(f"section has {size} points; budget is {section_budget()}")
    return [
        z
        for z in itertools.product(range(F.characteristic), repeat=sec.dimension)
        if class_membership(spec, sec.point(z), c)
    ]


def intersect_with_class(sec: SteinbergSection, c: ClassSpec, method: str = "auto") -> list[tuple]:
    if not c.regular_flag:
        raise ConfigurationError("the cross-section is only meaningful for regular classes")
    F = sec.spec.field
    if method == "auto":
        method = (
            "enumerate"
            if F.is_finite and F.characteristic ** sec.dimension <= section_budget()
            else "closed-form"
        )
    if method == "enumerate":
        return intersect_by_enumeration(sec, c)
    if method == "closed-form":
        return intersect_closed_form(sec, c)
    raise ConfigurationError(f"unknown intersection method {method!r}")


# -- the T^w action --------------------------------------------------------


def conjugate_by_diagonal(F: FieldSpec, t: Sequence, M) -> tuple:
    n = len(t)
    tinv = [F.inv(x) for x in t]
    return tuple(tuple(F.mul(F.mul(t[i], M[i][j]), tinv[j]) for j in range(n)) for i in range(n))


def tw_orbit_partition(sec: SteinbergSection, points: Sequence[tuple], Tw: Sequence) -> list[list[tuple]]:
    """Partition section points into orbits of conjugation by the elements of T^w."""
    F = sec.spec.field
    points = [tuple(z) for z in points]
    lookup = {sec.key(sec.point(z)): z for z in points}
    parent = {z: z for z in points}

    def find(z):
        while parent[z] != z:
            parent[z] = parent[parent[z]]
            z = parent[z]
        return z

    for z in points:
        M = sec.point(z)
        for t in Tw:
            diag = [t.entries[i][i] for i in range(sec.spec.n)] if hasattr(t, "entries") else list(t)
            image = sec.key(conjugate_by_diagonal(F, diag, M))
            if image not in lookup:
                raise ConfigurationError(
                    f"conjugate of section point {z} has no representative in the point list"
                )
            a, b = find(z), find(lookup[image])
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict = {}
    for z in points:
        blocks.setdefault(find(z), []).append(z)
    return sorted(sorted(b) for b in blocks.values())


# -- the isogeny SL_n -> PGL_n ---------------------------------------------


@dataclass(frozen=True)
class IsogenyContext:
    source: GroupSpec
    target: GroupSpec

    @classmethod
    def for_field(cls, n: int, F: FieldSpec) -> "IsogenyContext":
        return cls(GroupSpec("SL", n, F), GroupSpec("PGL", n, F))

    def __post_init__(self):
        if self.source.family != "SL" or self.target.family != "PGL":
            raise ConfigurationError("isogeny context is SL_n -> PGL_n")
        if self.source.n != self.target.n or self.source.field != self.target.field:
            raise ConfigurationError("source and target must share n and field")

    @property
    def kernel(self) -> list:
        """K = mu_n(F), as scalars."""
        return self.source.field.roots_of_unity(self.source.n)

    @property
    def kernel_complete(self) -> bool:
        return len(self.kernel) == self.source.n


class MissingLiftError(ConfigurationError):
    pass


def torus_lift(ctx: IsogenyContext, t: Sequence) -> tuple:
    """A det-1 diagonal lift of the PGL torus element t, if the field has one."""
    F = ctx.source.field
    d = F.one
    for x in t:
        d = F.mul(d, x)
    roots = F.nth_roots(F.inv(d), ctx.source.n)
    if not roots:
        raise MissingLiftError(f"no det-1 lift of diag{tuple(t)} over {F.label()}")
    lam = min(roots)
    return tuple(F.mul(lam, x) for x in t)


def delta_map(ctx: IsogenyContext, w: WeylElement, t: Sequence):
    """delta(t) = Ad_{w^-1}(t~^-1) t~, a scalar in K."""
    F = ctx.source.field
    t = [x for x in (t.entries[i][i] for i in range(ctx.source.n))] if hasattr(t, "entries") else list(t)
    lifted = torus_lift(ctx, t)
    sigma = weyl_to_perm(w)
    values = {F.mul(F.inv(lifted[sigma[j]]), lifted[j]) for j in range(len(lifted))}
    if len(values) != 1:
        raise ConfigurationError(f"diag{tuple(t)} is not fixed by w modulo scalars")
    return values.pop()


def delta_image(ctx: IsogenyContext, w: WeylElement, Tw: Sequence) -> tuple[list, int]:
    """(sorted image of delta, number of T^w elements without a lift over the field)."""
    image, skipped = set(), 0
    for t in Tw:
        try:
            image.add(delta_map(ctx, w, t))
        except MissingLiftError:
            skipped += 1
    if skipped:
        warnings.warn(
            f"{skipped} elements of T^w have no lift over {ctx.source.field.label()}; "
            "delta image may be partial",
            stacklevel=2,
        )
    return sorted(image), skipped


def sl_conjugate(spec: GroupSpec, x, y) -> bool:
    """Geometric SL_n-conjugacy of x and y.

    For regular elements of SL_n this is equality of characteristic
    polynomials; otherwise fall back to rational-canonical-form similarity.
    """
    F = spec.field
    if is_regular(spec, x) and is_regular(spec, y):
        return linalg.charpoly(F, x) == linalg.charpoly(F, y)
    return similar(F, x, y)


def twist_stabilizer(ctx: IsogenyContext, x1) -> list:
    """K(x1) = {k in K : k x1 is conjugate to x1}."""
    F = ctx.source.field
    return [k for k in ctx.kernel if sl_conjugate(ctx.source, linalg.scale(F, k, x1), x1)]


# -- He-Lusztig properties, exhaustively -----------------------------------


def unipotent_group(spec: GroupSpec) -> list[tuple]:
    F = spec.field
    n = spec.n
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in itertools.product(range(F.characteristic), repeat=len(slots)):
        M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(slots, vals):
            M[i][j] = v
        out.append(tuple(tuple(r) for r in M))
    return out


@dataclass(frozen=True)
class HeLusztigReport:
    section_points: int
    unipotent_order: int
    double_coset_size: int
    conjugates_distinct: int
    all_in_double_coset: bool
    covers_double_coset: bool

    @property
    def free(self) -> bool:
        return self.conjugates_distinct == self.section_points * self.unipotent_order

    @property
    def single_meeting(self) -> bool:
        return self.free and self.covers_double_coset and self.all_in_double_coset

    def to_json(self) -> dict:
        return {
            "section_points": self.section_points,
            "unipotent_order": self.unipotent_order,
            "double_coset_size": self.double_coset_size,
            "conjugates_distinct": self.conjugates_distinct,
            "free": self.free,
            "single_meeting": self.single_meeting,
        }


def he_lusztig_check(sec: SteinbergSection) -> HeLusztigReport:
    """Compare {u s u^-1 : s in section, u in U} against U lift(w) U, exhaustively.

    The map (s, u) -> u s u^-1 is injective iff the U-action is free and each
    orbit meets the section at most once; equality of image and double coset
    gives at least once.
    """
    spec, F = sec.spec, sec.spec.field
    if not F.is_finite:
        raise ConfigurationError("exhaustive check needs a finite field")
    q = F.characteristic
    U = unipotent_group(spec)
    budget = section_budget()
    if len(U) * (q**sec.dimension + len(U)) > budget:
        raise ResourceError("He-Lusztig check exceeds the enumeration budget")
    Uinv = [linalg.inverse(F, u) for u in U]
    lift = sec.lift()
    double_coset = {linalg.matmul(F, linalg.matmul(F, u1, lift), u2) for u1 in U for u2 in U}
    points = [sec.point(z) for z in itertools.product(range(q), repeat=sec.dimension)]
    conjugates = set()
    for s in points:
        for u, ui in zip(U, Uinv):
            conjugates.add(linalg.matmul(F, linalg.matmul(F, u, s), ui))
    return HeLusztigReport(
        section_points=len(points),
        unipotent_order=len(U),
        double_coset_size=len(double_coset),
        conjugates_distinct=len(conjugates),
        all_in_double_coset=conjugates <= double_coset,
        covers_double_coset=double_coset <= conjugates,
    )
