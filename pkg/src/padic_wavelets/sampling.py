"""Seeded random objects for property checks: amplitudes, step functions, vectors."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .cyclotomic import ScaledAmplitude, half_power
from .functions import StepFunction
from .padic import PAdicRational, vec_mod


def random_amplitude(rng: random.Random, p: int, max_conductor: int = 2) -> ScaledAmplitude:
    r = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
    a = ScaledAmplitude.rational(p, r).mul_root(rng.randrange(p**max_conductor), max_conductor)
    roll = rng.random()
    if roll < 0.25:
        a = a * half_power(p, rng.choice([-1, 1]))
    elif roll < 0.4:
        a = a + ScaledAmplitude.rational(p, rng.randint(-2, 2))
    return a


def random_cells(rng: random.Random, p: int, d: int, scale: int, r: int, count: int) -> list:
    """Up to ``count`` distinct cells of scale ``scale`` inside the ball of radius ``p**r``."""
    per = p ** (scale + r)
    total = per**d
    count = min(count, total)
    picks = rng.sample(range(total), count) if total > count else list(range(total))
    out = []
    for code in picks:
        u = []
        for _ in range(d):
            code, x = divmod(code, per)
            u.append(PAdicRational(p, x, -r))
        out.append(vec_mod(tuple(u), scale))
    return out


def random_function(
    rng: random.Random,
    p: int,
    d: int,
    *,
    max_scale: int = 2,
    max_radius_exp: int = 2,
    max_cells: int = 10,
    mean_zero: bool = False,
) -> StepFunction:
    """Random step function with support radius at most ``p**max_radius_exp``, constant at ``max_scale``."""
    r = rng.randint(0, max_radius_exp)
    lo = 1 - r if mean_zero else -r
    s = rng.randint(lo, max_scale)
    cells = random_cells(rng, p, d, s, r, rng.randint(2 if mean_zero else 1, max_cells))
    values = {c: random_amplitude(rng, p) for c in cells}
    if mean_zero:
        last = cells[-1]
        rest = ScaledAmplitude.zero(p)
        for c in cells[:-1]:
            rest = rest + values[c]
        values[last] = -rest
    return StepFunction(p, d, s, {k: v for k, v in values.items() if not v.is_zero()})


def random_integral_vector(rng: random.Random, p: int, d: int, digits: int = 4) -> tuple:
    return tuple(PAdicRational(p, rng.randrange(p**digits)) for _ in range(d))


def random_sphere_vector(rng: random.Random, p: int, d: int, digits: int = 4) -> tuple:
    """Integral vector with at least one unit coordinate (norm exactly one)."""
    while True:
        x = random_integral_vector(rng, p, d, digits)
        if any(c.mantissa and c.valuation == 0 for c in x):
            return x


def random_vector(rng: random.Random, p: int, d: int, digits: int = 4) -> tuple:
    """Vector with coordinates ``m * p**v`` of mixed valuations (possibly zero)."""
    return tuple(
        PAdicRational(p, rng.randrange(p**digits), rng.randint(-2, 2)) if rng.random() > 0.1 else PAdicRational(p, 0)
        for _ in range(d)
    )


def integral_matrices_mod(p: int, d: int, K: int):
    """All ``d x d`` matrices with entries in ``[0, p**K)``."""
    for entries in itertools.product(range(p**K), repeat=d * d):
        yield [list(entries[i * d : (i + 1) * d]) for i in range(d)]
