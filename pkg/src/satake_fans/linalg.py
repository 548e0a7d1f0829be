"""Exact rational and integer linear algebra used throughout the package."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

NEG_INF = -math.inf

Vector = tuple  # tuple of int | Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r} is not rational")
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def vec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), 0) for j in range(n))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : row . x = 0 for all rows}."""
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve(m: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of m x = b for square invertible m."""
    return mat_vec(inverse(m), [as_fraction(x) for x in b])


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    if all(type(x) is int for x in v):
        g = math.gcd(*v)
        return tuple(v) if g in (0, 1) else tuple(x // g for x in v)
    fr = [as_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    return rank(list(basis) + [list(v)]) == rank(basis) if basis else False


def column_reduce(a: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], int]:
    """Unimodular U with a·U = [H | 0], H of full column rank r.

    Returns (U, r). The last n - r columns of U are a lattice basis of the
    integer kernel of a.
    """
    mat = [list(map(int, row)) for row in a]
    u = identity(n)

    def col_op(dst: int, src: int, f: int) -> None:
        for row in mat:
            row[dst] -= f * row[src]
        for row in u:
            row[dst] -= f * row[src]

    def swap(i: int, j: int) -> None:
        for row in mat:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    r = 0
    for row in mat:
        if r == n:
            break
        while True:
            nz = [j for j in range(r, n) if row[j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(row[j]))
            swap(r, piv)
            done = True
            for j in range(r + 1, n):
                if row[j] != 0:
                    col_op(j, r, row[j] // row[r])
                    if row[j] != 0:
                        done = False
            if done:
                r += 1
                break
    return u, r


def integer_kernel(a: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    u, r = column_reduce(a, n)
    return [tuple(u[i][j] for i in range(n)) for j in range(r, n)]


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
