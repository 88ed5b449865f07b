"""Fraction-free elimination over the exact amplitude field."""
from __future__ import annotations

from typing import Sequence

from .cyclotomic import ScaledAmplitude


def solve(a: Sequence[Sequence[ScaledAmplitude]], b: Sequence[ScaledAmplitude]) -> list[ScaledAmplitude]:
    """Solve ``a x = b`` for square nonsingular ``a`` by Bareiss elimination.

    Raises ``ZeroDivisionError`` if ``a`` is singular.
    """
    n = len(a)
    if n == 0:
        return []
    p = a[0][0].p
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    prev = ScaledAmplitude.one(p)
    for k in range(n):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        inv_prev = prev.inverse()
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * inv_prev
            m[i][k] = ScaledAmplitude.zero(p)
        prev = m[k][k]
    x = [ScaledAmplitude.zero(p)] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n]
        for j in range(i + 1, n):
            acc = acc - m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def determinant(a: Sequence[Sequence[ScaledAmplitude]]) -> ScaledAmplitude:
    n = len(a)
    p = a[0][0].p
    m = [list(row) for row in a]
    sign = 1
    prev = ScaledAmplitude.one(p)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            return ScaledAmplitude.zero(p)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        inv_prev = prev.inverse()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * inv_prev
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def solve_many(
    a: Sequence[Sequence[ScaledAmplitude]], rhs: Sequence[Sequence[ScaledAmplitude]]
) -> list[list[ScaledAmplitude]]:
    """Solve ``a x = r`` for every column ``r`` of ``rhs`` (given as a list of columns).

    Gauss-Jordan over the field with rows kept sparse, so block-structured
    systems cost roughly the sum of their blocks.
    """
    n = len(a)
    if n == 0:
        return [[] for _ in rhs]
    p = a[0][0].p
    k = len(rhs)
    rows = []
    for i in range(n):
        row = {j: v for j, v in enumerate(a[i]) if not v.is_zero()}
        for c in range(k):
            v = rhs[c][i]
            if not v.is_zero():
                row[n + c] = v
        rows.append(row)
    for col in range(n):
        piv = next((i for i in range(col, n) if col in rows[i]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        prow = {j: v * inv for j, v in rows[col].items()}
        rows[col] = prow
        for i in range(n):
            if i == col or col not in rows[i]:
                continue
            f = rows[i][col]
            r = rows[i]
            for j, v in prow.items():
                nv = r.get(j, ScaledAmplitude.zero(p)) - f * v
                if nv.is_zero():
                    r.pop(j, None)
                else:
                    r[j] = nv
    zero = ScaledAmplitude.zero(p)
    return [[rows[i].get(n + c, zero) for i in range(n)] for c in range(k)]
