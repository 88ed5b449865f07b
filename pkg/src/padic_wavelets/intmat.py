"""Small integer-matrix helpers: products, determinants, inverses modulo p**K."""
from __future__ import annotations

from typing import Sequence

Matrix = tuple  # tuple of row tuples of int


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    return m


def identity(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), start=v[0] * 0) for row in a)


def det(a: Matrix) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(a)
    m = [list(row) for row in a]
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
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def rank_mod_p(a: Matrix, p: int) -> int:
    m = [[x % p for x in row] for row in a]
    n = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, n) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(n):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def inverse_mod(a: Matrix, p: int, K: int) -> Matrix:
    """Inverse modulo ``p**K`` of a matrix whose reduction mod ``p`` is invertible."""
    n = len(a)
    N = p**K
    if N == 1:
        return tuple((0,) * n for _ in range(n))
    m = [[x % N for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] % p), None)
        if piv is None:
            raise ValueError("matrix is not invertible modulo p")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, N)
        m[col] = [(x * inv) % N for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % N for x, y in zip(m[i], m[col])]
    return tuple(tuple(row[n:]) for row in m)
