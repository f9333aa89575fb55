"""Stokes geometry of isoclinic irregular classes in type A.

A class of slope nu = d/m is given by n pairwise distinct leading labels
(the eigenvalues of the regular semisimple leading term), so the value
attached to the root e_i - e_j is ``a = label_i - label_j``. Labels are
``r * exp(i pi s/t)`` with rational r, s/t and every angle below is an exact
rational multiple of pi, stored as a Fraction in units of pi.

The computation runs on the m-fold cover, where each ``a_lambda`` is single
valued: at cover angle theta the exponential factor of lambda has phase
``phi_lambda - nu * theta``. Conventions used throughout:

* Stokes:    phi - nu*theta = 1/2 (mod 1)     (purely imaginary)
* singular:  phi - nu*theta = 1   (mod 2)     (real and negative)
* positive:  phi - nu*theta in (1/2, 3/2) mod 2   (decaying)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .braidmonoid import BraidWord, coxeter_braid, cyclically_equivalent, positive_lift
from .errors import ConfigurationError, UnsupportedInputError
from .rootdata import RootSystem, WeylElement, element_from_positive_system

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Label:
    """The complex number modulus * exp(i pi angle), modulus > 0, angle in [0, 2)."""

    modulus: Fraction
    angle: Fraction

    @classmethod
    def make(cls, r, angle=0) -> "Label":
        r, angle = Fraction(r), Fraction(angle)
        if r == 0:
            raise ConfigurationError("labels must be nonzero in this representation")
        if r < 0:
            r, angle = -r, angle + 1
        return cls(r, angle % 2)

    @classmethod
    def parse(cls, text: str) -> "Label":
        """``"r"`` or ``"r@s/t"`` meaning r * exp(i pi s/t)."""
        m = re.fullmatch(r"\s*([-+]?[\d/]+)\s*(?:@\s*([-+]?[\d/]+))?\s*", text)
        if not m:
            raise ConfigurationError(f"cannot parse label {text!r}")
        return cls.make(Fraction(m.group(1)), Fraction(m.group(2) or 0))

    def rotate(self, angle: Fraction) -> "Label":
        return Label.make(self.modulus, self.angle + angle)

    def __str__(self):
        return f"{self.modulus}@{self.angle}"


def difference_angle(a: Label, b: Label) -> Fraction:
    """Exact argument (units of pi, in [0, 2)) of a - b."""
    if a == b:
        raise ConfigurationError("leading labels must be pairwise distinct")
    if a.modulus == b.modulus:
        # r(e^{ix} - e^{iy}) = 2ir sin((x-y)/2) e^{i(x+y)/2}
        half = ((a.angle - b.angle) / 2) % 2
        sign_shift = 0 if 0 < half < 1 else 1
        return ((a.angle + b.angle) / 2 + HALF + sign_shift) % 2
    if (a.angle - b.angle) % 1 == 0:
        same = (a.angle - b.angle) % 2 == 0
        coeff = a.modulus - b.modulus if same else a.modulus + b.modulus
        return (a.angle + (0 if coeff > 0 else 1)) % 2
    raise UnsupportedInputError(
        f"argument of {a} - {b} is not an exact rational multiple of pi"
    )


def root_pair(rs: RootSystem, idx: int) -> tuple[int, int]:
    """(i, j), 0-based, with roots[idx] = e_i - e_j in type A."""
    coeffs = rs.roots[idx]
    support = [k for k, c in enumerate(coeffs) if c != 0]
    lo, hi = support[0], support[-1] + 1
    return (lo, hi) if coeffs[lo] > 0 else (hi, lo)


def pair_index(rs: RootSystem) -> dict[tuple[int, int], int]:
    return {root_pair(rs, k): k for k in range(len(rs.roots))}


def weyl_label_permutation(w: WeylElement) -> tuple[int, ...]:
    """tau with w(e_i - e_j) = e_tau(i) - e_tau(j)."""
    rs = w.rs
    index = {v: k for k, v in pair_index(rs).items()}
    images = [index[w.root_action[k]] for k in range(rs.rank)]
    return tuple(a for a, _ in images) + (images[-1][1],)


def weyl_from_label_permutation(rs: RootSystem, tau: Sequence[int]) -> WeylElement:
    pidx = pair_index(rs)
    n = rs.rank + 1
    return element_from_positive_system(
        rs, [pidx[(tau[i], tau[j])] for i in range(n) for j in range(i + 1, n)]
    )


@dataclass(frozen=True)
class IrregularClassSpec:
    root_system: RootSystem
    slope: Fraction
    labels: tuple[Label, ...]
    deck_twist: WeylElement

    def __post_init__(self):
        rs = self.root_system
        if rs.type_label != "A":
            raise UnsupportedInputError("Stokes data are implemented for type A")
        if len(self.labels) != rs.rank + 1:
            raise ConfigurationError(f"{rs.name} needs {rs.rank + 1} labels")
        if self.slope <= 0:
            raise ConfigurationError("slope must be positive")
        if self.deck_twist.rs != rs:
            raise ConfigurationError("deck twist has the wrong root system")
        if self.deck_twist.order() != self.m:
            raise ConfigurationError(f"deck twist must have order m = {self.m}")
        shift = -2 * self.slope
        tau = weyl_label_permutation(self.deck_twist)
        # going once around the base multiplies every a_lambda by exp(-2 pi i nu)
        for i, lab in enumerate(self.labels):
            if self.labels[tau[i]] != lab.rotate(shift):
                raise ConfigurationError(
                    "deck twist is inconsistent with the labels: "
                    f"label {tau[i]} should be {lab.rotate(shift)}"
                )
        self.phases  # validates exactness and distinctness

    @property
    def d(self) -> int:
        return self.slope.numerator

    @property
    def m(self) -> int:
        return self.slope.denominator

    @cached_property
    def phases(self) -> tuple[Fraction, ...]:
        """phi_lambda for each root index."""
        rs = self.root_system
        out = []
        for k in range(len(rs.roots)):
            i, j = root_pair(rs, k)
            out.append(difference_angle(self.labels[i], self.labels[j]))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "root_system": self.root_system.name,
            "slope": str(self.slope),
            "labels": [str(x) for x in self.labels],
            "deck_twist": list(self.deck_twist.word),
        }


def deck_twist_from_labels(rs: RootSystem, slope, labels: Sequence[Label]) -> WeylElement:
    """The label permutation induced by multiplying every label by exp(-2 pi i nu)."""
    shift = -2 * Fraction(slope)
    position = {lab: k for k, lab in enumerate(labels)}
    try:
        tau = tuple(position[lab.rotate(shift)] for lab in labels)
    except KeyError:
        raise ConfigurationError("labels are not permuted by the branch monodromy") from None
    return weyl_from_label_permutation(rs, tau)


def standard_isoclinic(rs: RootSystem, slope) -> IrregularClassSpec:
    """Labels exp(2 pi i k/n) (m = n) or 0, 1, ..., n-1 (m = 1), with the matching deck twist."""
    slope = Fraction(slope)
    n = rs.rank + 1
    if slope.denominator == 1:
        labels = tuple(Label.make(k + 1) for k in range(n))
        return IrregularClassSpec(rs, slope, labels, WeylElement.identity(rs))
    if slope.denominator != n:
        raise UnsupportedInputError(
            f"standard labels need slope denominator 1 or {n}, got {slope}"
        )
    labels = tuple(Label.make(1, Fraction(2 * k, n)) for k in range(n))
    tau = tuple((k - slope.numerator) % n for k in range(n))
    return IrregularClassSpec(rs, slope, labels, weyl_from_label_permutation(rs, tau))


# -- directions ------------------------------------------------------------


def _solutions(phi: Fraction, nu: Fraction, residue: Fraction, modulus: int, lo: Fraction, hi: Fraction):
    """theta in [lo, hi) with phi - nu*theta = residue (mod modulus)."""
    step = Fraction(modulus) / nu
    theta0 = (phi - residue) / nu
    k = -((theta0 - lo) // step)
    theta = theta0 + k * step
    while theta < lo:
        theta += step
    while theta < hi:
        yield theta
        theta += step


def _directions(spec: IrregularClassSpec, residue: Fraction, modulus: int) -> list[tuple[Fraction, frozenset]]:
    nu = spec.slope
    found: dict[Fraction, set] = {}
    for k, phi in enumerate(spec.phases):
        for theta in _solutions(phi, nu, residue, modulus, Fraction(0), Fraction(2)):
            found.setdefault(theta, set()).add(k)
    return [(t, frozenset(found[t])) for t in sorted(found)]


def stokes_directions(spec: IrregularClassSpec) -> list[tuple[Fraction, frozenset]]:
    """Sorted (angle/pi, oscillatory roots) on the base circle, labels on the base branch."""
    return _directions(spec, HALF, 1)


def singular_directions(spec: IrregularClassSpec) -> list[tuple[Fraction, frozenset]]:
    """Sorted (angle/pi, maximally decaying roots)."""
    return _directions(spec, Fraction(1), 2)


def is_stokes(spec: IrregularClassSpec, theta) -> bool:
    theta = Fraction(theta)
    return any((phi - spec.slope * theta - HALF) % 1 == 0 for phi in spec.phases)


def dominance_chamber(spec: IrregularClassSpec, theta) -> frozenset:
    """Root indices decaying in direction theta (a cover angle, in units of pi)."""
    theta = Fraction(theta)
    if is_stokes(spec, theta):
        raise ConfigurationError(f"{theta}*pi is a Stokes direction")
    return frozenset(
        k
        for k, phi in enumerate(spec.phases)
        if HALF < (phi - spec.slope * theta) % 2 < 3 * HALF
    )


def check_positive_system(rs: RootSystem, chamber: Iterable[int]) -> bool:
    """Exactly one of +-lambda is in the set and the set is closed under addition."""
    chamber = frozenset(chamber)
    for k in range(len(rs.roots)):
        if (k in chamber) == (rs.negate_index(k) in chamber):
            return False
    for a in chamber:
        for b in chamber:
            s = tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))
            if s in rs.root_index and rs.root_index[s] not in chamber:
                return False
    return True


def default_base_direction(spec: IrregularClassSpec) -> Fraction:
    """Midpoint of the chamber entered just after angle 0."""
    angles = [t for t, _ in stokes_directions(spec)]
    if not angles:
        return Fraction(0)
    if angles[0] == 0:
        nxt = angles[1] if len(angles) > 1 else Fraction(2)
        return nxt / 2
    return ((angles[-1] - 2 + angles[0]) / 2) % 2


@dataclass(frozen=True)
class StokesDiagram:
    spec: IrregularClassSpec
    base_direction: Fraction
    stokes: tuple
    singular: tuple
    crossings: tuple  # cover angles in (base, base + 2)
    chambers: tuple  # len(crossings) + 1 positive systems
    relative_positions: tuple

    @property
    def braid(self) -> BraidWord:
        rs = self.spec.root_system
        letters: tuple = ()
        for w in self.relative_positions:
            letters += positive_lift(w).letters
        return BraidWord(rs, letters)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "base_direction": str(self.base_direction),
            "stokes_directions": [
                {"angle": str(t), "roots": sorted(r)} for t, r in self.stokes
            ],
            "singular_directions": [
                {"angle": str(t), "roots": sorted(r)} for t, r in self.singular
            ],
            "crossings": [str(t) for t in self.crossings],
            "chambers": [sorted(c) for c in self.chambers],
            "relative_positions": [list(w.word) for w in self.relative_positions],
            "braid": list(self.braid.letters),
        }

    def render(self) -> str:
        """Plain-text list of directions; S = Stokes, A = singular, * = base."""
        marks: dict[Fraction, list[str]] = {}
        for t, roots in self.stokes:
            marks.setdefault(t, []).append(f"S {sorted(roots)}")
        for t, roots in self.singular:
            marks.setdefault(t, []).append(f"A {sorted(roots)}")
        marks.setdefault(self.base_direction % 2, []).append("* base")
        lines = [f"{self.spec.root_system.name}, slope {self.spec.slope}"]
        for t in sorted(marks):
            lines.append(f"  {str(t) + 'pi':>8}  " + "  ".join(marks[t]))
        lines.append(f"  braid: {' '.join(f's{i}' for i in self.braid.letters) or '(empty)'}")
        return "\n".join(lines)


def stokes_diagram(spec: IrregularClassSpec, base_direction=None) -> StokesDiagram:
    rs = spec.root_system
    base = default_base_direction(spec) if base_direction is None else Fraction(base_direction)
    if is_stokes(spec, base):
        raise ConfigurationError(f"base direction {base}*pi is a Stokes direction")
    crossing_set = set()
    for phi in spec.phases:
        crossing_set.update(_solutions(phi, spec.slope, HALF, 1, base, base + 2))
    crossings = sorted(crossing_set)
    probes = [base] + [
        (a + b) / 2 for a, b in zip(crossings, crossings[1:] + [base + 2])
    ]
    chambers = [dominance_chamber(spec, t) for t in probes]
    positions = []
    prev = element_from_positive_system(rs, chambers[0])
    for ch in chambers[1:]:
        cur = element_from_positive_system(rs, ch)
        positions.append(prev.inverse() * cur)
        prev = cur
    return StokesDiagram(
        spec,
        base,
        tuple(stokes_directions(spec)),
        tuple(singular_directions(spec)),
        tuple(crossings),
        tuple(chambers),
        tuple(positions),
    )


def braid_from_irregular_class(spec: IrregularClassSpec, base_direction=None) -> BraidWord:
    return stokes_diagram(spec, base_direction).braid


def expected_isoclinic_braid(spec: IrregularClassSpec) -> BraidWord:
    """c~^(d h/m); for m = h this is c~^d."""
    h = spec.root_system.coxeter_number
    if h % spec.m:
        raise UnsupportedInputError(f"slope denominator {spec.m} does not divide h = {h}")
    return coxeter_braid(spec.root_system) ** (spec.d * h // spec.m)


def verify_isoclinic_braid(spec: IrregularClassSpec, base_direction=None) -> bool:
    """The extracted braid is a cyclic shift of c~^(d h/m)."""
    target = expected_isoclinic_braid(spec)
    return cyclically_equivalent(braid_from_irregular_class(spec, base_direction), target)
