"""Exact scalar domains: the rationals and prime fields.

Scalars are plain Python objects (``Fraction`` over Q, ``int`` residues in
``[0, p)`` over F_p) so matrix kernels stay cheap; a :class:`FieldSpec`
carries the operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ConfigurationError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rationals" | "prime"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ConfigurationError("the rationals have characteristic 0")
        elif self.kind == "prime":
            if not _is_prime(self.characteristic):
                raise ConfigurationError(f"{self.characteristic} is not prime")
        else:
            raise ConfigurationError(f"unknown field kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    @property
    def order(self) -> int | None:
        return self.characteristic if self.is_finite else None

    @property
    def zero(self):
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_finite else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.is_finite:
            p = self.characteristic
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ConfigurationError(f"{x} has no image in F_{p}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_finite:
            return pow(x, -1, self.characteristic)
        return 1 / Fraction(x)

    def neg(self, x):
        return (-x) % self.characteristic if self.is_finite else -x

    def add(self, x, y):
        return (x + y) % self.characteristic if self.is_finite else x + y

    def sub(self, x, y):
        return (x - y) % self.characteristic if self.is_finite else x - y

    def mul(self, x, y):
        return (x * y) % self.characteristic if self.is_finite else x * y

    def pow(self, x, k: int):
        if self.is_finite:
            return pow(x, k, self.characteristic)
        return Fraction(x) ** k

    def elements(self) -> Iterator:
        if not self.is_finite:
            raise ConfigurationError("cannot enumerate an infinite field")
        return iter(range(self.characteristic))

    def units(self) -> Iterator:
        if not self.is_finite:
            raise ConfigurationError("cannot enumerate an infinite field")
        return iter(range(1, self.characteristic))

    def roots_of_unity(self, n: int) -> list:
        """All x in the field with x^n = 1 (only ±1 over Q)."""
        if self.is_finite:
            return [x for x in self.units() if pow(x, n, self.characteristic) == 1]
        return [Fraction(1)] if n % 2 else [Fraction(1), Fraction(-1)]

    def nth_roots(self, a, n: int) -> list:
        """All x in the field with x^n = a."""
        if self.is_finite:
            a = self(a)
            return [x for x in self.elements() if pow(x, n, self.characteristic) == a]
        a = Fraction(a)
        if a == 0:
            return [Fraction(0)]
        num = _int_root(abs(a.numerator), n)
        den = _int_root(a.denominator, n)
        if num is None or den is None:
            return []
        r = Fraction(num, den)
        out = []
        for cand in (r, -r):
            if cand ** n == a and cand not in out:
                out.append(cand)
        return out

    def fmt(self, x) -> str:
        return str(x)

    def label(self) -> str:
        return "QQ" if not self.is_finite else f"F_{self.characteristic}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "characteristic": self.characteristic}


def _int_root(a: int, n: int) -> int | None:
    if a < 0:
        return None
    r = round(a ** (1.0 / n)) if a < 2**52 else int(a ** (1.0 / n))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**n == a:
            return c
    lo, hi = 0, a + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < a:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == a else None


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


def parse_field(text: str) -> FieldSpec:
    text = text.strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:F_?|GF\(?)?(\d+)\)?", text)
    if not m:
        raise ConfigurationError(f"cannot parse field {text!r}")
    return GF(int(m.group(1)))


# -- polynomials -----------------------------------------------------------
# Coefficient lists are highest degree first and monic: [1, c1, ..., cn].

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str, field: FieldSpec) -> tuple:
    """Parse a univariate polynomial in ``x`` such as ``"x^2-3x+1"``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ConfigurationError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ConfigurationError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3) is None:
            deg = 0
        else:
            deg = int(m.group(4)) if m.group(4) else 1
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + sign * c
        pos = m.end()
    degree = max(d for d, c in coeffs.items() if c != 0) if any(coeffs.values()) else 0
    if coeffs.get(degree, 0) != 1:
        raise ConfigurationError(f"polynomial {text!r} is not monic")
    return tuple(field(coeffs.get(d, 0)) for d in range(degree, -1, -1))


def format_poly(coeffs: Sequence) -> str:
    n = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        deg = n - k
        if c == 0:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
        body = (str(a) if (a != 1 or deg == 0) else "") + mono
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def poly_from_roots(roots: Sequence, field: FieldSpec) -> tuple:
    coeffs = [field.one]
    for r in roots:
        nxt = coeffs + [field.zero]
        for i in range(1, len(nxt)):
            nxt[i] = field.sub(nxt[i], field.mul(r, coeffs[i - 1]))
        coeffs = nxt
    return tuple(coeffs)


def poly_derivative(coeffs: Sequence, field: FieldSpec) -> tuple:
    n = len(coeffs) - 1
    return tuple(field.mul(field(n - k), c) for k, c in enumerate(coeffs[:-1]))


def poly_gcd(a: Sequence, b: Sequence, field: FieldSpec) -> tuple:
    """Monic gcd over the field (coefficients highest first)."""

    def strip(p):
        p = list(p)
        while p and p[0] == 0:
            p.pop(0)
        return p

    a, b = strip(a), strip(b)
    while b:
        # a mod b
        a = list(a)
        lead_inv = field.inv(b[0])
        while len(a) >= len(b) and a:
            f = field.mul(a[0], lead_inv)
            for i in range(len(b)):
                a[i] = field.sub(a[i], field.mul(f, b[i]))
            a = strip(a)
        a, b = b, a
    if not a:
        return ()
    lead_inv = field.inv(a[0])
    return tuple(field.mul(c, lead_inv) for c in a)


def is_squarefree(coeffs: Sequence, field: FieldSpec) -> bool:
    return len(poly_gcd(coeffs, poly_derivative(coeffs, field), field)) == 1
