import random

import numpy as np
import pytest

from padic_wavelets.cyclotomic import ScaledAmplitude
from padic_wavelets.linalg import determinant, solve, solve_many
from padic_wavelets.sampling import random_amplitude


def rand_matrix(rng, p, n):
    return [[random_amplitude(rng, p) for _ in range(n)] for _ in range(n)]


def matvec(a, x, p):
    out = []
    for row in a:
        s = ScaledAmplitude.zero(p)
        for v, c in zip(row, x):
            s = s + v * c
        out.append(s)
    return out


@pytest.mark.parametrize("p,n", [(2, 3), (3, 4), (5, 3)])
def test_solve_is_exact(p, n):
    rng = random.Random(p * 10 + n)
    a = rand_matrix(rng, p, n)
    b = [random_amplitude(rng, p) for _ in range(n)]
    x = solve(a, b)
    assert matvec(a, x, p) == b
    assert solve_many(a, [b]) == [x]


def test_determinant_matches_floats():
    rng = random.Random(9)
    for p in (2, 3):
        a = rand_matrix(rng, p, 4)
        ref = np.linalg.det(np.array([[v.to_complex() for v in row] for row in a]))
        assert abs(determinant(a).to_complex() - ref) < 1e-8 * max(1, abs(ref))


def test_singular_systems():
    p = 3
    one = ScaledAmplitude.one(p)
    a = [[one, one], [one * 2, one * 2]]
    assert determinant(a).is_zero()
    with pytest.raises(ZeroDivisionError):
        solve(a, [one, one])
    with pytest.raises(ZeroDivisionError):
        solve_many(a, [[one, one]])


def test_identity_rhs_gives_inverse():
    rng = random.Random(4)
    p, n = 3, 4
    a = rand_matrix(rng, p, n)
    zero, one = ScaledAmplitude.zero(p), ScaledAmplitude.one(p)
    eye = [[one if i == j else zero for i in range(n)] for j in range(n)]
    cols = solve_many(a, eye)
    for j, col in enumerate(cols):
        assert matvec(a, col, p) == eye[j]


def test_empty():
    assert solve([], []) == []
    assert solve_many([], [[], []]) == [[], []]
