"""Exact matrices over Q (lists of rows of Fractions)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def as_matrix(rows: Sequence[Sequence], cols: int = None) -> Matrix:
    out = [[Fraction(x) for x in r] for r in rows]
    if cols is not None and any(len(r) != cols for r in out):
        raise ValueError("ragged matrix")
    return out


def shape(m: Matrix, cols: int = None) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else (cols or 0))


def matmul(a: Matrix, b: Matrix, inner: int = None) -> Matrix:
    """``a @ b``; ``inner`` is needed when ``a`` has no rows."""
    n = len(a)
    k = len(b) if inner is None else inner
    p = len(b[0]) if b else 0
    out = zeros(n, p)
    for i in range(n):
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                row = out[i]
                for j in range(p):
                    row[j] += x * bt[j]
    return out


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(cols)]
    return [list(r) for r in zip(*m)]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for r in m for x in r)


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def det(m: Matrix) -> Fraction:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(r) + identity(n)[i] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def column(m: Matrix, j: int) -> List[Fraction]:
    return [r[j] for r in m]


def hstack(cols: Sequence[Sequence[Fraction]], rows: int) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return [[c[i] for c in cols] for i in range(rows)]


def block_diag(a: Matrix, a_shape: Tuple[int, int], b: Matrix, b_shape: Tuple[int, int]) -> Matrix:
    (ra, ca), (rb, cb) = a_shape, b_shape
    out = zeros(ra + rb, ca + cb)
    for i in range(ra):
        out[i][:ca] = a[i]
    for i in range(rb):
        out[ra + i][ca:] = b[i]
    return out
