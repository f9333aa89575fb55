"""Exact dense linear algebra over a :class:`~stokesbraid.fields.FieldSpec`.

Matrices are tuples of row tuples. Nothing here allocates floats.
"""

from __future__ import annotations

from typing import Sequence

from .fields import FieldSpec

Matrix = tuple  # tuple[tuple[scalar, ...], ...]


def identity(F: FieldSpec, n: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def diag(F: FieldSpec, entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(F(entries[i]) if i == j else F.zero for j in range(n)) for i in range(n))


def from_rows(F: FieldSpec, rows) -> Matrix:
    return tuple(tuple(F(x) for x in row) for row in rows)


def matmul(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    if F.is_finite:
        p = F.characteristic
        return tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in A
        )
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(F: FieldSpec, A: Matrix, v: Sequence) -> tuple:
    if F.is_finite:
        p = F.characteristic
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in A)
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def scale(F: FieldSpec, c, A: Matrix) -> Matrix:
    return tuple(tuple(F.mul(c, x) for x in row) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def is_upper_triangular(A: Matrix) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(i))


def is_lower_unipotent(F: FieldSpec, A: Matrix) -> bool:
    n = len(A)
    return all(
        A[i][j] == (F.one if i == j else F.zero) for i in range(n) for j in range(i, n)
    )


def is_upper_unipotent(F: FieldSpec, A: Matrix) -> bool:
    n = len(A)
    return all(
        A[i][j] == (F.one if i == j else F.zero) for i in range(n) for j in range(i + 1)
    )


def is_diagonal(A: Matrix) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(len(A)) if i != j)


def is_scalar(A: Matrix) -> bool:
    return is_diagonal(A) and all(A[i][i] == A[0][0] for i in range(len(A)))


def row_reduce(F: FieldSpec, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(F: FieldSpec, rows: Sequence[Sequence]) -> int:
    return len(row_reduce(F, rows)[1])


def det(F: FieldSpec, A: Matrix):
    M = [list(r) for r in A]
    n = len(M)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def inverse(F: FieldSpec, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    R, piv = row_reduce(F, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def solve(F: FieldSpec, A: Sequence[Sequence], b: Sequence):
    """One solution of A x = b, or None if inconsistent."""
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_reduce(F, aug)
    if ncols in piv:
        return None
    x = [F.zero] * ncols
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return tuple(x)


def charpoly(F: FieldSpec, A: Matrix) -> tuple:
    """Coefficients [1, c1, ..., cn] of det(xI - A), by Berkowitz's division-free recursion."""
    n = len(A)
    if n == 0:
        return (F.one,)
    a = A[0][0]
    R = A[0][1:]
    C = tuple(A[i][0] for i in range(1, n))
    A1 = tuple(tuple(A[i][1:]) for i in range(1, n))
    inner = charpoly(F, A1)
    col = [F.one, F.neg(a)]
    v = C
    for _ in range(n - 1):
        col.append(F.neg(sum_products(F, R, v)))
        v = matvec(F, A1, v)
    out = []
    for i in range(n + 1):
        s = F.zero
        for j in range(min(i, n - 1) + 1):
            s = F.add(s, F.mul(col[i - j], inner[j]))
        out.append(s)
    return tuple(out)


def sum_products(F: FieldSpec, u: Sequence, v: Sequence):
    s = sum(a * b for a, b in zip(u, v))
    return s % F.characteristic if F.is_finite else s


def is_cyclic(F: FieldSpec, A: Matrix) -> bool:
    """True iff I, A, ..., A^(n-1) are linearly independent (min poly = char poly)."""
    n = len(A)
    powers = []
    P = identity(F, n)
    for _ in range(n):
        powers.append([x for row in P for x in row])
        P = matmul(F, P, A)
    return rank(F, powers) == n


def matpow(F: FieldSpec, A: Matrix, k: int) -> Matrix:
    result = identity(F, len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        k >>= 1
    return result


def fmt_matrix(F: FieldSpec, A: Matrix) -> list[list[str]]:
    return [[F.fmt(x) for x in row] for row in A]
