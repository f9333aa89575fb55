"""Braid varieties X(beta, w) in affine coordinates.

``X(beta, w) = {z in A^r : w^-1 b_{i_1}(z_1) ... b_{i_r}(z_r) in B}``,
with ``b_i`` from :mod:`stokesbraid.matgroup`. A spec with ``target=None``
imposes no Borel condition (the whole chart ``A^r``), which is the model
used for Kloosterman data.

Two counting routes over F_q are provided and cross-checked in tests:
lexicographic enumeration of ``F_q^r`` and a transfer count over the
points of ``G/B(F_q)``.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import linalg
from .braidmonoid import (
    BraidWord,
    airy_braid,
    braid_equal,
    coxeter_braid,
    demazure_product,
    full_twist,
    half_twist,
)
from .errors import ConfigurationError, ResourceError
from .fields import GF, FieldSpec
from .matgroup import (
    ClassSpec,
    GroupSpec,
    ad_weyl_diag,
    alpha,
    all_flags,
    b_matrix,
    class_membership,
    diagonal_torus,
    flag_canonical,
    torus_fixed_points,
    weyl_lift,
    weyl_to_perm,
)
from .rootdata import (
    RootSystem,
    WeylElement,
    coxeter_element,
    fixed_space_dimension,
    longest_element,
)
from .steinberg import (
    IsogenyContext,
    delta_image,
    intersect_with_class,
    section,
    tw_orbit_partition,
    twist_stabilizer,
)

COUNT_BUDGET = 10**8


def count_budget() -> int:
    return int(os.environ.get("STOKESBRAID_BUDGET", COUNT_BUDGET))


@dataclass(frozen=True)
class BraidVarietySpec:
    group: GroupSpec
    braid: BraidWord
    target: WeylElement | None

    def __post_init__(self):
        if self.braid.root_system != self.group.root_system:
            raise ConfigurationError(
                f"braid over {self.braid.root_system.name} does not match {self.group.label()}"
            )
        if self.target is not None and self.target.rs != self.group.root_system:
            raise ConfigurationError("target Weyl element has the wrong root system")

    @property
    def r(self) -> int:
        return len(self.braid)

    def over(self, F: FieldSpec) -> "BraidVarietySpec":
        return replace(self, group=replace(self.group, field=F))

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "braid": self.braid.to_json(),
            "target": None if self.target is None else list(self.target.word),
        }


def monodromy(spec: BraidVarietySpec, z: Sequence) -> tuple:
    """prod_k b_{i_k}(z_k).

    Moduli points impose this product = 1. Asking only that it be central is
    the natural alternative for groups that are not simply connected.
    """
    if len(z) != spec.r:
        raise ConfigurationError(f"expected {spec.r} coordinates, got {len(z)}")
    F = spec.group.field
    M = linalg.identity(F, spec.group.n)
    for i, zk in zip(spec.braid.letters, z):
        M = linalg.matmul(F, M, b_matrix(spec.group, i, zk))
    return M


def membership(spec: BraidVarietySpec, z: Sequence) -> bool:
    M = monodromy(spec, z)
    if spec.target is None:
        return True
    F = spec.group.field
    lift_inv = linalg.inverse(F, weyl_lift(spec.group, spec.target))
    return linalg.is_upper_triangular(linalg.matmul(F, lift_inv, M))


def expected_dimension(braid: BraidWord) -> int:
    return len(braid) - demazure_product(braid).length()


# -- torus action ----------------------------------------------------------


def torus_action(spec: BraidVarietySpec, t: Sequence, z: Sequence) -> tuple[tuple, tuple]:
    """Push diag(t) through b(z_1)...b(z_r): returns (z', t') with t b(z) = b(z') t'."""
    F = spec.group.field
    cur = tuple(F(x) for x in t)
    out = []
    for i, zk in zip(spec.braid.letters, z):
        out.append(F.mul(alpha(spec.group, i, cur), F(zk)))
        cur = cur[: i - 1] + (cur[i], cur[i - 1]) + cur[i + 1 :]
    return tuple(out), cur


def stabilizer_fixed_space(braid: BraidWord, w: WeylElement) -> int:
    """dim of the fixed space of pi(beta) w^-1 on the Cartan; 0 means finite stabilizers."""
    u = braid.image() * w.inverse()
    return fixed_space_dimension(braid.root_system, u)


def stabilizer(spec: BraidVarietySpec, z: Sequence, torus: Sequence[Sequence]) -> list[tuple]:
    z = tuple(spec.group.field(x) for x in z)
    return [tuple(t) for t in torus if torus_action(spec, t, z)[0] == z]


# -- counting --------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    spec: BraidVarietySpec
    q: int
    raw_count: int
    constrained_count: int | None
    orbit_estimate: int
    method: str
    elapsed: float = field(compare=False)
    class_constraint: ClassSpec | None = None

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "q": self.q,
            "raw_count": self.raw_count,
            "constrained_count": self.constrained_count,
            "orbit_estimate": self.orbit_estimate,
            "method": self.method,
            "class_constraint": None
            if self.class_constraint is None
            else self.class_constraint.to_json(),
        }


def _enumerate(spec: BraidVarietySpec, constraint: ClassSpec | None) -> Iterator[tuple[tuple, bool]]:
    """Lexicographic walk over F_q^r sharing prefix products; yields (z, in_class)."""
    G, F = spec.group, spec.group.field
    q = F.characteristic
    lift_inv = (
        None if spec.target is None else linalg.inverse(F, weyl_lift(G, spec.target))
    )
    letters = spec.braid.letters
    tables = [[b_matrix(G, i, z) for z in range(q)] for i in letters]

    def rec(k, prefix, M):
        if k == len(letters):
            if lift_inv is not None and not linalg.is_upper_triangular(
                linalg.matmul(F, lift_inv, M)
            ):
                return
            in_class = constraint is not None and class_membership(G, M, constraint)
            yield prefix, in_class
            return
        for z in range(q):
            yield from rec(k + 1, prefix + (z,), linalg.matmul(F, M, tables[k][z]))

    yield from rec(0, (), linalg.identity(F, G.n))


def solutions(spec: BraidVarietySpec, q: int, constraint: ClassSpec | None = None) -> list[tuple]:
    """All z in X(beta, w)(F_q), in the class when a constraint is given."""
    spec = spec.over(GF(q))
    _check_budget(q, spec.r)
    return [z for z, ok in _enumerate(spec, constraint) if constraint is None or ok]


def _check_budget(q: int, r: int):
    if q**r > count_budget():
        raise ResourceError(f"q^r = {q}^{r} exceeds the enumeration budget {count_budget()}")


@lru_cache(maxsize=32)
def _flag_tables(family: str, n: int, q: int):
    G = GroupSpec(family, n, GF(q))
    F = G.field
    flags = all_flags(G)
    index = {f: k for k, f in enumerate(flags)}
    trans = {}
    for i in range(1, n):
        bs = [b_matrix(G, i, z) for z in range(q)]
        trans[i] = tuple(
            tuple(index[flag_canonical(F, linalg.matmul(F, f, b))] for b in bs) for f in flags
        )
    return flags, index, trans


def count_by_flags(spec: BraidVarietySpec, q: int) -> int:
    """|X(beta, w)(F_q)| by propagating tuple counts over G/B(F_q)."""
    spec = spec.over(GF(q))
    G, F = spec.group, spec.group.field
    if spec.target is None:
        return q**spec.r
    flags, index, trans = _flag_tables(G.family, G.n, q)
    counts = [0] * len(flags)
    counts[index[flag_canonical(F, linalg.identity(F, G.n))]] = 1
    for i in spec.braid.letters:
        nxt = [0] * len(flags)
        table = trans[i]
        for f, c in enumerate(counts):
            if c:
                for g in table[f]:
                    nxt[g] += c
        counts = nxt
    return counts[index[flag_canonical(F, weyl_lift(G, spec.target))]]


def count_points(
    spec: BraidVarietySpec,
    q: int,
    class_constraint: ClassSpec | None = None,
    method: str = "enumerate",
) -> CountReport:
    start = time.perf_counter()
    constrained = None
    if method == "flags":
        if class_constraint is not None:
            raise ConfigurationError("class constraints need the enumeration route")
        raw = count_by_flags(spec, q)
    elif method == "enumerate":
        _check_budget(q, spec.r)
        raw, constrained = 0, (0 if class_constraint is not None else None)
        qspec = spec.over(GF(q))
        if class_constraint is not None and class_constraint.kind == "regular-by-charpoly":
            # re-read the charpoly over F_q
            class_constraint = ClassSpec.regular(qspec.group, [GF(q)(c) for c in class_constraint.charpoly])
        for _, in_class in _enumerate(qspec, class_constraint):
            raw += 1
            if in_class:
                constrained += 1
    else:
        raise ConfigurationError(f"unknown counting method {method!r}")
    rank = spec.group.n - 1
    orbit_estimate = -(-raw // (q - 1) ** rank)
    return CountReport(
        spec, q, raw, constrained, orbit_estimate, method, time.perf_counter() - start,
        class_constraint,
    )


def sample_points(spec: BraidVarietySpec, q: int, k: int, rng: random.Random) -> list[tuple]:
    """k distinct uniformly random points of X(beta, w)(F_q), sorted.

    Backward completion counts over G/B(F_q) let each coordinate be drawn
    with the exact conditional weight, so no rejection is needed.
    """
    if spec.target is None:
        return sorted({tuple(rng.randrange(q) for _ in range(spec.r)) for _ in range(k)})
    G = spec.over(GF(q)).group
    F = G.field
    flags, index, trans = _flag_tables(G.family, G.n, q)
    letters = spec.braid.letters
    # completions[k][f]: tuples z_{k+1..r} taking flag f to the target
    final = [0] * len(flags)
    final[index[flag_canonical(F, weyl_lift(G, spec.target))]] = 1
    completions = [final]
    for i in reversed(letters):
        nxt = completions[0]
        completions.insert(0, [sum(nxt[g] for g in trans[i][f]) for f in range(len(flags))])
    start = index[flag_canonical(F, linalg.identity(F, G.n))]
    total = completions[0][start]
    if total < k:
        raise ResourceError(f"X has only {total} points over F_{q}, {k} requested")
    # the z-labels of the transition tables belong to canonical representatives,
    # so successors are recomputed from the actual prefix product
    bs = {i: [b_matrix(G, i, z) for z in range(q)] for i in set(letters)}
    found: set[tuple] = set()
    while len(found) < k:
        M, z = linalg.identity(F, G.n), []
        for pos, i in enumerate(letters):
            options = [linalg.matmul(F, M, b) for b in bs[i]]
            weights = [completions[pos + 1][index[flag_canonical(F, X)]] for X in options]
            zk = _weighted_index(rng, weights)
            z.append(zk)
            M = options[zk]
        found.add(tuple(z))
    return sorted(found)


def _weighted_index(rng: random.Random, weights: Sequence[int]) -> int:
    r = rng.randrange(sum(weights))
    for k, wt in enumerate(weights):
        if r < wt:
            return k
        r -= wt
    raise AssertionError("unreachable")


def count_degree(spec: BraidVarietySpec, qs: Sequence[int], confirm: Sequence[int] = (17,)) -> dict:
    """Degree of the monic point-count fit of X(beta, w) over the given q.

    If no over-determined fit exists on ``qs`` alone, the extra sizes in
    ``confirm`` are added, which is needed once the degree reaches len(qs).
    """
    counts = {q: count_by_flags(spec, q) for q in qs}
    fit = fit_monic_degree(list(counts), list(counts.values()))
    if fit is None and confirm:
        counts.update({q: count_by_flags(spec, q) for q in confirm})
        fit = fit_monic_degree(list(counts), list(counts.values()))
    return {
        "counts": counts,
        "degree": None if fit is None else fit[0],
        "coefficients": None if fit is None else fit[1],
    }


# -- polynomial fits -------------------------------------------------------


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (lowest first) of the interpolating polynomial of degree < len(xs)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for j in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m in range(n):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[m] * basis[k + 1]
            denom *= xs[j] - xs[m]
        for k in range(n):
            coeffs[k] += ys[j] * basis[k] / denom
    return coeffs


def fit_monic_degree(
    qs: Sequence[int], counts: Sequence[int], max_degree: int | None = None
) -> tuple[int, list[int]] | None:
    """Smallest d with a monic integer polynomial of degree d through every (q, count).

    Returns (d, coefficients lowest first), or None. By default d stays below
    len(qs) so that every accepted fit is over-determined; at d = len(qs) any
    data can be interpolated and the fit would carry no information.
    """
    if max_degree is None:
        max_degree = len(qs) - 1
    if all(c == 0 for c in counts):
        return None
    for d in range(min(max_degree, len(qs)) + 1):
        residual = [c - q**d for q, c in zip(qs, counts)]
        low = interpolate(qs[:d], residual[:d]) if d else []
        if any(x.denominator != 1 for x in low):
            continue
        poly = [int(x) for x in low] + [1]
        if all(sum(a * q**k for k, a in enumerate(poly)) == c for q, c in zip(qs, counts)):
            return d, poly
    return None


# -- rigidity verifiers ----------------------------------------------------


@dataclass
class ModuliAnswer:
    point_count_over_closure_surrogate: int
    torus_orbit_count: int
    stabilizer_order: int
    rigid: bool
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rigid != (self.torus_orbit_count == 1):
            raise ValueError("rigid must agree with a single torus orbit")

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "point_count_over_closure_surrogate": self.point_count_over_closure_surrogate,
            "torus_orbit_count": self.torus_orbit_count,
            "stabilizer_order": self.stabilizer_order,
            "rigid": self.rigid,
            "checks": self.checks,
            "details": self.details,
        }


def _check(checks: list, claim: str, passed: bool, **detail):
    checks.append({"claim": claim, "passed": bool(passed), **detail})
    return passed


def kloosterman_verify(group: GroupSpec, cls: ClassSpec) -> ModuliAnswer:
    if group.family not in ("SL", "PGL"):
        raise ConfigurationError("Kloosterman verification is for SL_n or PGL_n")
    if group.n > 4:
        raise ConfigurationError("Kloosterman verification is limited to n <= 4")
    rs = group.root_system
    c = coxeter_element(rs)
    sec = section(group, c)
    points = intersect_with_class(sec, cls)
    Tw = torus_fixed_points(group, c)
    blocks = tw_orbit_partition(sec, points, Tw) if points else []
    checks: list = []
    _check(checks, "Steinberg section meets the class", bool(points), points=len(points))
    orbit_size = len(blocks[0]) if blocks else 0
    stab = len(Tw) // orbit_size if orbit_size else 0
    spec = BraidVarietySpec(group, coxeter_braid(rs), None)
    for z in points:
        _check(
            checks,
            "monodromy of the braid chart equals the section point",
            monodromy(spec, z) == sec.point(z),
            z=[str(x) for x in z],
        )
    if group.field.is_finite:
        q = group.field.characteristic
        chart = solutions(spec, q, cls)
        _check(
            checks,
            "class-constrained chart points biject onto the section intersection",
            sorted(chart) == sorted(points),
            chart_points=len(chart),
        )
    details: dict = {}
    if group.family == "PGL":
        details.update(_isogeny_checks(group, cls, c, points, Tw, checks))
    answer = ModuliAnswer(
        point_count_over_closure_surrogate=len(points),
        torus_orbit_count=len(blocks),
        stabilizer_order=stab,
        rigid=len(blocks) == 1,
        checks=checks,
        details={
            "group": group.to_json(),
            "class": cls.to_json(),
            "coxeter_word": list(c.word),
            "section_points": [[str(x) for x in z] for z in points],
            "orbits": [[[str(x) for x in z] for z in b] for b in blocks],
            "torus_fixed_order": len(Tw),
            **details,
        },
    )
    return answer


def _isogeny_checks(group: GroupSpec, cls: ClassSpec, c: WeylElement, points, Tw, checks: list) -> dict:
    """|Sigma cap C| = |K / K(x1)| and surjectivity of delta, when mu_n(F) is complete."""
    ctx = IsogenyContext.for_field(group.n, group.field)
    if not ctx.kernel_complete:
        return {"isogeny_checks": "skipped: field lacks the n-th roots of unity"}
    sl = ctx.source
    sl_sec = section(sl, c)
    sl_points = intersect_with_class(sl_sec, ClassSpec.regular(sl, cls.charpoly))
    x1 = sl_sec.point(sl_points[0])
    stab = twist_stabilizer(ctx, x1)
    quotient = len(ctx.kernel) // len(stab)
    _check(
        checks,
        "|Sigma cap C| = |K / K(x1)|",
        len(points) == quotient,
        K=len(ctx.kernel),
        K_x1=len(stab),
    )
    image, skipped = delta_image(ctx, c, Tw)
    _check(
        checks,
        "delta: T^w -> K is surjective",
        skipped == 0 and image == sorted(ctx.kernel),
        image=[str(k) for k in image],
    )
    return {"K": [str(k) for k in ctx.kernel], "K_x1": [str(k) for k in stab]}


AIRY_QS = (5, 7, 11, 13)


def airy_verify(
    rs: RootSystem, group: GroupSpec | None = None, qs: Sequence[int] = AIRY_QS, seed: int = 0
) -> ModuliAnswer:
    """Combinatorial and (for SL_2, SL_3) point-count checks of Airy rigidity."""
    checks: list = []
    h = rs.coxeter_number
    c = coxeter_element(rs)
    w0 = longest_element(rs)
    c_braid = coxeter_braid(rs)
    delta = half_twist(rs)
    beta_nu = airy_braid(rs)
    beta_prime = c_braid * delta
    _check(checks, "c~^h represents the full twist", braid_equal(c_braid**h, full_twist(rs)))
    _check(
        checks,
        "beta_nu = c~ Delta^2",
        braid_equal(beta_nu, c_braid * full_twist(rs)),
    )
    _check(checks, "Dem(c~ Delta) = w0", demazure_product(beta_prime) == w0)
    dim = expected_dimension(beta_prime)
    _check(checks, "dim X(beta') = rank", dim == rs.rank, dimension=dim)
    _check(
        checks,
        "l(beta_nu) - 2 l(w0) = rank",
        len(beta_nu) - 2 * w0.length() == rs.rank,
        value=len(beta_nu) - 2 * w0.length(),
    )
    fixed = stabilizer_fixed_space(beta_prime, w0)
    _check(checks, "pi(beta') w0^-1 = c is elliptic", fixed == 0 and beta_prime.image() * w0.inverse() == c)
    details: dict = {"type": rs.name, "beta_prime": beta_prime.to_json(), "coxeter_word": list(c.word)}
    stab_order = 0
    if group is None:
        return ModuliAnswer(1, 1, stab_order, True, checks, details) if all(
            x["passed"] for x in checks
        ) else ModuliAnswer(0, 0, 0, False, checks, details)

    if group.family != "SL" or group.root_system != rs:
        raise ConfigurationError("Airy point counts are implemented for SL_n of the given type")
    if group.n > 3:
        raise ConfigurationError("the full Airy check is limited to n <= 3")
    spec = BraidVarietySpec(group, beta_prime, w0)
    if group.n == 2:
        sym = airy_symbolic_sl2()
        details["symbolic"] = sym
        _check(checks, "X(sigma^2, s1) = {z1 z2 = 1}", sym["matches_expected"])
        _check(checks, "torus acts transitively on z1 != 0", sym["transitive"])
        _check(checks, "stabilizer has order 2", sym["stabilizer_order"] == 2)
        stab_order = sym["stabilizer_order"]
    counts = [count_by_flags(spec, q) for q in qs]
    details["counts"] = dict(zip(qs, counts))
    fit = fit_monic_degree(list(qs), counts)
    details["fit"] = fit[1] if fit else None
    _check(checks, "point count is monic of degree rank", fit is not None and fit[0] == rs.rank, fit=fit)
    prediction = [(q - 1) ** rs.rank for q in qs]
    _check(
        checks,
        "point count equals a single T/S orbit, (q-1)^rank",
        counts == prediction,
        counts=counts,
    )
    # stabilizer over a field containing the n-th roots of unity
    q_s = next(q for q in qs if (q - 1) % group.n == 0)
    qspec = spec.over(GF(q_s))
    z = sample_points(spec, q_s, 1, random.Random(seed))[0]
    stab = stabilizer(qspec, z, list(diagonal_torus(qspec.group)))
    if group.n != 2:
        stab_order = len(stab)
    _check(checks, "stabilizer is finite and central", all(len(set(t)) == 1 for t in stab),
           q=q_s, stabilizer=[list(t) for t in stab])
    details["stabilizer_q"] = q_s
    rigid = all(x["passed"] for x in checks)
    return ModuliAnswer(1 if rigid else 0, 1 if rigid else 0, stab_order, rigid, checks, details)


def airy_symbolic_sl2() -> dict:
    """Solve X(sigma^2, s1) for SL_2 symbolically and describe the torus action."""
    import sympy

    z1, z2, a = sympy.symbols("z1 z2 a")

    def b(z):
        return sympy.Matrix([[z, -1], [1, 0]])

    s_inv = sympy.Matrix([[0, 1], [-1, 0]])
    M = s_inv * b(z1) * b(z2)
    equation = sympy.expand(M[1, 0])
    # torus diag(a, 1/a): z1 -> a^2 z1, z2 -> a^-2 z2
    spec_t = (a**2 * z1, z2 / a**2)
    preserved = sympy.simplify(equation.subs({z1: spec_t[0], z2: spec_t[1]}, simultaneous=True) - equation) == 0
    # on {z1 z2 = 1}, z1 != 0 determines the point; a^2 z1 sweeps every nonzero value
    stab = sympy.solve(sympy.Eq(a**2, 1), a)
    solved = sympy.solve(equation, z2)
    return {
        "equation": str(equation),
        "matches_expected": sympy.expand(equation - (1 - z1 * z2)) == 0,
        "solution": f"z2 = {solved[0]}",
        "action_preserves_equation": bool(preserved),
        "transitive": bool(preserved) and solved == [1 / z1],
        "stabilizer": [str(s) for s in stab],
        "stabilizer_order": len(stab),
    }


def finite_stabilizer_check(
    spec: BraidVarietySpec, q: int, n_points: int, rng: random.Random
) -> dict:
    """Pointwise stabilizers over F_q lie in the finite group T^{pi(beta) w^-1}."""
    if spec.target is None:
        raise ConfigurationError("needs a target Weyl element")
    u = spec.braid.image() * spec.target.inverse()
    elliptic = fixed_space_dimension(spec.braid.root_system, u) == 0
    qspec = spec.over(GF(q))
    torus = list(diagonal_torus(qspec.group))
    sigma = weyl_to_perm(u)
    fixed = {t for t in torus if ad_weyl_diag(sigma, t) == t}
    points = sample_points(spec, q, n_points, rng)
    records = []
    for z in points:
        stab = stabilizer(qspec, z, torus)
        records.append({"z": list(z), "stabilizer": [list(t) for t in stab],
                        "inside_fixed_torus": all(t in fixed for t in stab)})
    return {
        "elliptic": elliptic,
        "fixed_torus_order": len(fixed),
        "points": records,
        "passed": elliptic and all(r["inside_fixed_torus"] for r in records),
    }
