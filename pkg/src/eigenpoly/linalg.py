"""Dense exact matrices over the rationals.

A ``RationalMatrix`` is a tuple of row tuples of ``Fraction``.  Every function
here is pure and returns fresh tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import ShapeError

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    out = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ShapeError("ragged matrix rows")
    return out


def shape(m: RationalMatrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> RationalMatrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> RationalMatrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def require_square(m: RationalMatrix) -> int:
    r, c = shape(m)
    if r != c:
        raise ShapeError(f"expected a square matrix, got {r}x{c}")
    return r


def transpose(m: RationalMatrix) -> RationalMatrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if shape(a)[1] != shape(b)[0]:
        raise ShapeError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    if not bt:
        return tuple(() for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: RationalMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def add(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if shape(a) != shape(b):
        raise ShapeError(f"cannot add {shape(a)} and {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: RationalMatrix, c) -> RationalMatrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def shift(a: RationalMatrix, t) -> RationalMatrix:
    """Return ``a - t*I``."""
    n = require_square(a)
    t = Fraction(t)
    return tuple(tuple(a[i][j] - t if i == j else a[i][j] for j in range(n)) for i in range(n))


def trace(a: RationalMatrix) -> Fraction:
    n = require_square(a)
    return sum((a[i][i] for i in range(n)), Fraction(0))


def is_symmetric(a: RationalMatrix) -> bool:
    n = len(a)
    if shape(a) != (n, n):
        return False
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def _integer_rows(a: RationalMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return (rows, product of the row scales)."""
    rows = []
    total = 1
    for row in a:
        den = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * den) for x in row])
        total *= den
    return rows, total


def det(a: RationalMatrix) -> Fraction:
    """Fraction-free Bareiss determinant."""
    n = require_square(a)
    if n == 0:
        return Fraction(1)
    m, denom = _integer_rows(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - lead * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], denom)


def rank(a: RationalMatrix) -> int:
    rows = [list(r) for r in a]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / p[c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], p)]
        r += 1
        if r == len(rows):
            break
    return r


def to_float(a: RationalMatrix) -> np.ndarray:
    r, c = shape(a)
    return np.array([[float(x) for x in row] for row in a], dtype=float).reshape(r, c)
