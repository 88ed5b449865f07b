"""The norm-preserving group of Q_p^d and its action on step functions.

Group elements are stored in factored form ``(gamma, b, m)`` with point map
``x -> p**gamma (m x + b)``: first the matrix, then the translation, then the
dilation.  Composition ``g.compose(h)`` is the point map ``g o h``.

On functions, ``act(g, f)(x) = p**(-d gamma/2) f(p**gamma (m x + b))``.  With
this convention ``act(g.compose(h), f) == act(h, act(g, f))``.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intmat
from .cyclotomic import ScaledAmplitude, half_power
from .functions import (
    StepFunction,
    compact,
    dilate,
    dilate_unnormalized,
    make_indicator,
    matrix_act,
    scale_amp,
    translate,
)
from .padic import (
    Ball,
    PAdicRational,
    reduce_mod_Zp,
    vec_add,
    vec_mod,
    vec_norm,
    vec_shift,
    vec_sub,
    vec_valuation,
)
from .wavelet import WaveletIndex, make_wavelet, psi_one

__all__ = [
    "UnitMatrix",
    "GroupElement",
    "AffineElement",
    "is_unit_matrix",
    "columns_criterion",
    "e1_to_x",
    "act",
    "factorize",
    "from_point_images",
    "orbit_classify",
    "orbit_generate",
    "default_generators",
    "affine_act",
    "ball_transitivity_witness",
]


def _entries(p: int, m) -> list:
    rows = getattr(m, "rows", m)
    return [[PAdicRational.coerce(p, x) for x in row] for row in rows]


def _integral(p: int, m) -> tuple | None:
    """Integer entries of ``m`` if all lie in ``Z_p``, otherwise ``None``."""
    rows = _entries(p, m)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    if any(not x.is_integral() for r in rows for x in r):
        return None
    return intmat.as_matrix([[int(x) for x in r] for r in rows])


def is_unit_matrix(p: int, m) -> bool:
    """Entries in ``Z_p`` and a determinant of norm one."""
    a = _integral(p, m)
    return a is not None and intmat.det(a) % p != 0


def columns_criterion(p: int, m) -> bool:
    """Every column has norm one and the columns span ``Z_p^d`` (checked mod ``p``)."""
    rows = _entries(p, m)
    d = len(rows)
    for j in range(d):
        if vec_norm([rows[i][j] for i in range(d)]) != 1:
            return False
    a = _integral(p, m)
    return a is not None and intmat.rank_mod_p(a, p) == d


def stabilizer_witness(p: int, m) -> tuple | None:
    """A digit vector ``x`` of norm one with ``|m x| < 1``, if one exists.

    Such an ``x`` exists exactly when ``m`` (integral) is singular mod ``p``.
    """
    a = _integral(p, m)
    if a is None:
        raise ValueError("matrix is not integral")
    d = len(a)
    for x in itertools.product(range(p), repeat=d):
        if any(x) and all(v % p == 0 for v in intmat.matvec(a, x)):
            return x
    return None


@dataclass(frozen=True)
class UnitMatrix:
    p: int
    rows: tuple

    def __post_init__(self):
        a = _integral(self.p, self.rows)
        if a is None or intmat.det(a) % self.p == 0:
            raise ValueError(f"not a norm-preserving matrix: {self.rows}")
        object.__setattr__(self, "rows", a)

    @classmethod
    def identity(cls, p: int, d: int) -> UnitMatrix:
        return cls(p, intmat.identity(d))

    @property
    def d(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: UnitMatrix) -> UnitMatrix:
        return UnitMatrix(self.p, intmat.matmul(self.rows, other.rows))

    def apply(self, x: Sequence[PAdicRational]) -> tuple:
        return tuple(
            sum((x[j] * a for j, a in enumerate(row) if a), PAdicRational(self.p, 0)) for row in self.rows
        )

    def is_identity(self) -> bool:
        return self.rows == intmat.identity(self.d)


@dataclass(frozen=True)
class GroupElement:
    gamma: int
    b: tuple
    m: UnitMatrix

    def __post_init__(self):
        if len(self.b) != self.m.d:
            raise ValueError("translation and matrix dimensions differ")
        object.__setattr__(self, "b", tuple(PAdicRational.coerce(self.m.p, c) for c in self.b))

    @property
    def p(self) -> int:
        return self.m.p

    @property
    def d(self) -> int:
        return self.m.d

    @classmethod
    def identity(cls, p: int, d: int) -> GroupElement:
        return cls(0, (PAdicRational(p, 0),) * d, UnitMatrix.identity(p, d))

    @classmethod
    def translation(cls, p: int, b: Sequence) -> GroupElement:
        return cls(0, tuple(b), UnitMatrix.identity(p, len(b)))

    @classmethod
    def dilation(cls, p: int, d: int, gamma: int) -> GroupElement:
        return cls(gamma, (PAdicRational(p, 0),) * d, UnitMatrix.identity(p, d))

    @classmethod
    def matrix(cls, m: UnitMatrix) -> GroupElement:
        return cls(0, (PAdicRational(m.p, 0),) * m.d, m)

    def apply(self, x: Sequence[PAdicRational]) -> tuple:
        return vec_shift(vec_add(self.m.apply(x), self.b), self.gamma)

    def compose(self, other: GroupElement) -> GroupElement:
        """Point map ``self o other``."""
        b = vec_add(self.m.apply(other.b), vec_shift(self.b, -other.gamma))
        return GroupElement(self.gamma + other.gamma, b, self.m @ other.m)

    def is_identity(self) -> bool:
        return self.gamma == 0 and all(c.is_zero() for c in self.b) and self.m.is_identity()


@dataclass(frozen=True)
class AffineElement:
    """``x -> a x + b`` on ``Q_p``."""

    a: PAdicRational
    b: PAdicRational

    def __post_init__(self):
        if self.a.is_zero():
            raise ValueError("affine scale a must be nonzero")


def e1_to_x(p: int, x: Sequence) -> UnitMatrix:
    """A norm-preserving matrix whose first column is ``x`` (requires ``|x| = 1``).

    ``x`` must be integral with a unit coordinate.  If ``x_1`` is not a unit,
    a unit coordinate is swapped into first place, the identity with first
    column replaced is built there, and the swap is undone on the rows.
    """
    x = tuple(PAdicRational.coerce(p, c) for c in x)
    if vec_norm(x) != 1:
        raise ValueError(f"|x|_p must be 1, got {vec_norm(x)}")
    xs = [int(c) for c in x]
    d = len(xs)
    k = 0 if xs[0] % p else next(i for i, c in enumerate(xs) if c % p)
    perm = list(range(d))
    perm[0], perm[k] = perm[k], perm[0]
    y = [xs[perm[i]] for i in range(d)]
    rows = [[y[i] if j == 0 else int(i == j) for j in range(d)] for i in range(d)]
    rows = [rows[perm[i]] for i in range(d)]
    return UnitMatrix(p, rows)


# --------------------------------------------------------------------------
# action on functions


def act(g: GroupElement, f: StepFunction) -> StepFunction:
    """``x -> p**(-d gamma/2) f(p**gamma (m x + b))``; unitary."""
    if (g.p, g.d) != (f.p, f.d):
        raise ValueError("group element and function live over different spaces")
    out = dilate(f, g.gamma)
    out = translate(out, g.b)
    if not g.m.is_identity():
        out = matrix_act(out, g.m.rows)
    return out


def act_word(word: Sequence[GroupElement], f: StepFunction) -> StepFunction:
    """Action of the point map ``w1 o w2 o ... o wk``, applied letter by letter."""
    for w in word:
        f = act(w, f)
    return f


def factorize(word: Sequence[GroupElement]) -> GroupElement:
    """Factored form of the point map ``w1 o w2 o ... o wk``."""
    if not word:
        raise ValueError("empty word")
    out = word[0]
    for w in word[1:]:
        out = out.compose(w)
    return out


def apply_word(word: Sequence[GroupElement], x: Sequence[PAdicRational]) -> tuple:
    for w in reversed(word):
        x = w.apply(x)
    return tuple(x)


def from_point_images(p: int, images: Sequence[Sequence[PAdicRational]]) -> GroupElement:
    """Recover ``(gamma, b, m)`` from the images of ``0, e_1, ..., e_d``.

    The columns of ``p**gamma m`` are ``phi(e_i) - phi(0)``; a unit matrix has
    columns of norm one, which pins down ``gamma``.
    """
    origin = tuple(images[0])
    cols = [vec_sub(img, origin) for img in images[1:]]
    d = len(cols)
    gamma = min(vec_valuation(c) for c in cols)
    m = [[cols[j][i].shift(-gamma) for j in range(d)] for i in range(d)]
    return GroupElement(gamma, vec_shift(origin, -gamma), UnitMatrix(p, m))


def spanning_points(p: int, d: int) -> list:
    zero = (PAdicRational(p, 0),) * d
    return [zero] + [tuple(PAdicRational(p, int(i == j)) for j in range(d)) for i in range(d)]


# --------------------------------------------------------------------------
# orbit of psi^(1)


def orbit_classify(f: StepFunction) -> tuple[int, WaveletIndex] | None:
    """``(ell, idx)`` with ``f == zeta_p**ell * psi_idx`` exactly, or ``None``."""
    p, d = f.p, f.d
    c = compact(f)
    if len(c.cells) != p**d:
        return None
    s = c.scale
    parents = {vec_mod(k, s - 1) for k in c.cells}
    if len(parents) != 1:
        return None
    (parent,) = parents
    gamma = 1 - s
    n = reduce_mod_Zp(vec_shift(parent, gamma))
    norm = half_power(p, -d * gamma)

    def cell(m):
        return c.cells.get(tuple(q + PAdicRational(p, x, s - 1) for q, x in zip(parent, m)))

    v0 = cell((0,) * d)
    ell = next((l for l in range(p) if v0 == norm.mul_root(l, 1)), None)
    if ell is None:
        return None
    J = []
    for l in range(d):
        v = cell(tuple(int(i == l) for i in range(d)))
        j = next((j for j in range(p) if v == v0.mul_root(j, 1)), None)
        if j is None:
            return None
        J.append(j)
    if not any(J):
        return None
    idx = WaveletIndex(gamma, n, tuple(J))
    rebuilt = scale_amp(make_wavelet(idx), ScaledAmplitude.root(p, 1, ell))
    if rebuilt != c:
        return None
    return ell, idx


def default_generators(p: int, d: int, sphere_samples: int = 3, seed: int = 0) -> list[GroupElement]:
    """Matrices (swaps, ``e1_to_x`` on a sphere sample, unit scalars), small translations, dilations by ``p**±1``."""
    gens: list[GroupElement] = []
    rng = random.Random(seed)
    for i, j in itertools.combinations(range(d), 2):
        rows = [list(r) for r in intmat.identity(d)]
        rows[i], rows[j] = rows[j], rows[i]
        gens.append(GroupElement.matrix(UnitMatrix(p, rows)))
    if d == 1:
        gens += [GroupElement.matrix(UnitMatrix(p, [[u]])) for u in range(2, p)]
    else:
        seen = set()
        while len(seen) < sphere_samples:
            x = tuple(rng.randrange(p * p) for _ in range(d))
            if any(c % p for c in x) and x not in seen and x != (1,) + (0,) * (d - 1):
                seen.add(x)
                gens.append(GroupElement.matrix(e1_to_x(p, x)))
    for l in range(d):
        e = tuple(PAdicRational(p, int(i == l)) for i in range(d))
        gens.append(GroupElement.translation(p, e))
        gens.append(GroupElement.translation(p, vec_shift(e, -1)))
    if d > 1:
        gens.append(GroupElement.translation(p, (PAdicRational(p, 1, -1),) * d))
    gens.append(GroupElement.dilation(p, d, 1))
    gens.append(GroupElement.dilation(p, d, -1))
    return gens


@dataclass
class OrbitReport:
    classes: set
    per_depth: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    functions_seen: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def statistics(self) -> dict:
        gammas = Counter(idx.gamma for _, idx in self.classes)
        ells = Counter(ell for ell, _ in self.classes)
        return {
            "functions": self.functions_seen,
            "classes": len(self.classes),
            "per_depth_new": self.per_depth,
            "gamma_histogram": {str(k): v for k, v in sorted(gammas.items())},
            "ell_histogram": {str(k): v for k, v in sorted(ells.items())},
            "distinct_indices": len({idx for _, idx in self.classes}),
            "failures": len(self.failures),
        }


def orbit_generate(
    p: int, d: int, depth: int, generators: Iterable[GroupElement] | None = None, *, strict: bool = True
) -> OrbitReport:
    """Breadth-first closure of ``psi^(1)`` under ``generators``, classifying everything reached.

    With ``strict`` a function that fails to classify raises ``AssertionError``.
    """
    gens = list(generators) if generators is not None else default_generators(p, d)
    start = psi_one(p, d)
    seen = {compact(start)}
    frontier = [start]
    report = OrbitReport(classes={orbit_classify(start)}, per_depth=[1])
    for _ in range(depth):
        nxt = []
        for f in frontier:
            for g in gens:
                h = compact(act(g, f))
                if h in seen:
                    continue
                seen.add(h)
                cls = orbit_classify(h)
                if cls is None:
                    if strict:
                        raise AssertionError(f"reached function outside the orbit form: {h!r}")
                    report.failures.append(h)
                    continue
                report.classes.add(cls)
                nxt.append(h)
        report.per_depth.append(len(nxt))
        frontier = nxt
    report.functions_seen = len(seen)
    return report


# --------------------------------------------------------------------------
# one-dimensional affine action and ball transitivity


def affine_act(g: AffineElement, f: StepFunction) -> StepFunction:
    """``x -> |a|_p**(-1/2) f((x - b) / a)`` for ``d = 1``."""
    if f.d != 1:
        raise ValueError("affine_act is one-dimensional")
    p = f.p
    a = PAdicRational.coerce(p, g.a)
    b = PAdicRational.coerce(p, g.b)
    v, u = a.valuation, a.mantissa
    h = f
    if u != 1 and f.cells:
        # f(u^-1 y): any integer congruent to u^-1 modulo p**(scale + r) acts identically
        K = max(f.scale + f.support_exponent(), 0)
        h = matrix_act(f, [[pow(u, -1, p**K) if K else 1]])
    h = translate(dilate_unnormalized(h, -v), (-b,))
    return scale_amp(h, half_power(p, v))


def ball_transitivity_witness(b1: Ball, b2: Ball) -> GroupElement:
    """A dilation-translation element whose point map sends ``b1`` onto ``b2``.

    Then ``act(g, indicator(b2)) == p**(-d gamma/2) indicator(b1)``.
    """
    p, d = b1.p, b1.d
    gamma = b1.gamma - b2.gamma
    b = vec_shift(vec_sub(b2.center.to_pvec(), b1.center.to_pvec()), -b1.gamma)
    g = GroupElement(gamma, b, UnitMatrix.identity(p, d))
    if act(g, make_indicator(b2)) != scale_amp(make_indicator(b1), half_power(p, -d * gamma)):
        raise AssertionError("ball transport check failed")
    return g


def random_unit_matrix(rng: random.Random, p: int, d: int, digits: int = 4) -> UnitMatrix:
    while True:
        rows = [[rng.randrange(p**digits) for _ in range(d)] for _ in range(d)]
        if intmat.det(rows) % p:
            return UnitMatrix(p, rows)


def random_element(rng: random.Random, p: int, d: int, max_gamma: int = 2, digits: int = 2) -> GroupElement:
    m = random_unit_matrix(rng, p, d, 2)
    b = tuple(PAdicRational(p, rng.randrange(p ** (2 * digits)), -digits) for _ in range(d))
    return GroupElement(rng.randint(-max_gamma, max_gamma), b, m)


def random_generator(rng: random.Random, p: int, d: int) -> GroupElement:
    kind = rng.randrange(3)
    if kind == 0:
        return GroupElement.matrix(random_unit_matrix(rng, p, d, 2))
    if kind == 1:
        return GroupElement.translation(
            p, tuple(PAdicRational(p, rng.randrange(p**3), -rng.randint(0, 2)) for _ in range(d))
        )
    return GroupElement.dilation(p, d, rng.choice([-2, -1, 1, 2]))
