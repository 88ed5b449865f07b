"""Locally constant, compactly supported functions on Q_p^d.

A :class:`StepFunction` at scale ``s`` is constant on the cosets of
``p**s Z_p^d``.  It is stored as a finite map from canonical coset
representatives (each coordinate in ``[0, p**s)``) to nonzero amplitudes;
the empty map is the zero function.  Haar measure is normalised by
``mu(Z_p^d) = 1``, so each cell weighs ``p**(-s d)``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels, intmat
from .cyclotomic import ScaledAmplitude, half_power
from .padic import Ball, PAdicRational, vec_key, vec_mod, vec_shift, vec_sub

__all__ = [
    "StepFunction",
    "make_indicator",
    "refine",
    "integrate",
    "inner",
    "inner_float_oracle",
    "translate",
    "dilate",
    "dilate_unnormalized",
    "matrix_act",
    "evaluate",
    "is_mean_zero",
    "is_in_D0",
    "tensor",
    "compact",
]


class StepFunction:
    __slots__ = ("p", "d", "scale", "cells", "_compact")

    def __init__(self, p: int, d: int, scale: int, cells: Mapping | Iterable = ()):
        items = cells.items() if isinstance(cells, Mapping) else cells
        out: dict = {}
        for key, amp in items:
            key = tuple(key)
            if len(key) != d:
                raise ValueError(f"cell key of length {len(key)} in dimension {d}")
            key = vec_mod(tuple(PAdicRational.coerce(p, c) for c in key), scale)
            if not isinstance(amp, ScaledAmplitude):
                amp = ScaledAmplitude.rational(p, amp)
            elif amp.p != p:
                raise ValueError("amplitude prime does not match")
            prev = out.get(key)
            out[key] = amp if prev is None else prev + amp
        self._init(p, d, scale, {k: v for k, v in out.items() if not v.is_zero()})

    def _init(self, p, d, scale, cells):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_compact", None)

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    @classmethod
    def _trusted(cls, p: int, d: int, scale: int, cells: dict) -> StepFunction:
        # keys already canonical at `scale`, amplitudes nonzero
        obj = object.__new__(cls)
        obj._init(p, d, scale, cells)
        return obj

    @classmethod
    def zero(cls, p: int, d: int, scale: int = 0) -> StepFunction:
        return cls._trusted(p, d, scale, {})

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def sorted_cells(self) -> list:
        return sorted(self.cells.items(), key=lambda kv: vec_key(kv[0]))

    def value_at_cell(self, key) -> ScaledAmplitude | None:
        """Amplitude on the scale-``self.scale`` cell containing the (finer) cell ``key``."""
        return self.cells.get(vec_mod(key, self.scale))

    def support_exponent(self) -> int:
        """Smallest ``r`` with the support inside ``p**-r Z_p^d`` (and ``r >= -scale``)."""
        r = -self.scale
        for key in self.cells:
            for c in key:
                if c.mantissa and -c.valuation > r:
                    r = -c.valuation
        return r

    def _same_space(self, other: StepFunction):
        if not isinstance(other, StepFunction):
            raise TypeError(f"expected StepFunction, got {type(other).__name__}")
        if (self.p, self.d) != (other.p, other.d):
            raise ValueError(f"mixing (p, d) = {(self.p, self.d)} and {(other.p, other.d)}")

    # algebra ----------------------------------------------------------
    def __add__(self, other: StepFunction) -> StepFunction:
        return add(self, other)

    def __sub__(self, other: StepFunction) -> StepFunction:
        return add(self, scale_amp(other, ScaledAmplitude.rational(self.p, -1)))

    def __neg__(self) -> StepFunction:
        return scale_amp(self, ScaledAmplitude.rational(self.p, -1))

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return mul_pointwise(self, other)
        if isinstance(other, (ScaledAmplitude, int, Fraction)):
            return scale_amp(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (ScaledAmplitude, int, Fraction)):
            return scale_amp(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if (self.p, self.d) != (other.p, other.d):
            return False
        a, b = compact(self), compact(other)
        if not a.cells and not b.cells:
            return True
        return a.scale == b.scale and a.cells == b.cells

    def __hash__(self):
        c = compact(self)
        if not c.cells:
            return hash((self.p, self.d))
        return hash((c.scale, frozenset(c.cells.items())))

    def __repr__(self):
        return f"StepFunction(p={self.p}, d={self.d}, scale={self.scale}, cells={len(self.cells)})"


def _children_offsets(p: int, d: int, s: int, s_new: int) -> list:
    if s_new == s:
        return [tuple(PAdicRational(p, 0) for _ in range(d))]
    steps = [PAdicRational(p, k, s) for k in range(p ** (s_new - s))]
    return list(itertools.product(steps, repeat=d))


def make_indicator(b: Ball) -> StepFunction:
    p, d = b.p, b.d
    return StepFunction._trusted(p, d, b.scale, {b.point(): ScaledAmplitude.one(p)})


def refine(f: StepFunction, s: int) -> StepFunction:
    if s < f.scale:
        raise ValueError(f"cannot refine scale {f.scale} down to {s}")
    if s == f.scale:
        return f
    offs = _children_offsets(f.p, f.d, f.scale, s)
    cells = {}
    for key, amp in f.cells.items():
        for off in offs:
            cells[tuple(a + b for a, b in zip(key, off))] = amp
    return StepFunction._trusted(f.p, f.d, s, cells)


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    f._same_space(g)
    s = max(f.scale, g.scale)
    f2, g2 = refine(f, s), refine(g, s)
    cells = dict(f2.cells)
    for key, amp in g2.cells.items():
        prev = cells.get(key)
        if prev is None:
            cells[key] = amp
        else:
            tot = prev + amp
            if tot.is_zero():
                del cells[key]
            else:
                cells[key] = tot
    return StepFunction._trusted(f.p, f.d, s, cells)


def scale_amp(f: StepFunction, a) -> StepFunction:
    if not isinstance(a, ScaledAmplitude):
        a = ScaledAmplitude.rational(f.p, a)
    if a.is_zero():
        return StepFunction.zero(f.p, f.d, f.scale)
    return StepFunction._trusted(f.p, f.d, f.scale, {k: v * a for k, v in f.cells.items()})


def map_amplitudes(f: StepFunction, fn: Callable[[ScaledAmplitude], ScaledAmplitude]) -> StepFunction:
    cells = {}
    for k, v in f.cells.items():
        w = fn(v)
        if not w.is_zero():
            cells[k] = w
    return StepFunction._trusted(f.p, f.d, f.scale, cells)


def conj(f: StepFunction) -> StepFunction:
    return StepFunction._trusted(f.p, f.d, f.scale, {k: v.conj() for k, v in f.cells.items()})


def _fine_coarse(f: StepFunction, g: StepFunction):
    return (f, g, False) if f.scale >= g.scale else (g, f, True)


def mul_pointwise(f: StepFunction, g: StepFunction) -> StepFunction:
    f._same_space(g)
    fine, coarse, _ = _fine_coarse(f, g)
    s = coarse.scale
    cells = {}
    for key, amp in fine.cells.items():
        other = coarse.cells.get(vec_mod(key, s))
        if other is not None:
            prod = amp * other
            if not prod.is_zero():
                cells[key] = prod
    return StepFunction._trusted(f.p, f.d, fine.scale, cells)


def _cell_measure(p: int, d: int, s: int) -> Fraction:
    return Fraction(p) ** (-s * d)


def integrate(f: StepFunction) -> ScaledAmplitude:
    total = ScaledAmplitude.zero(f.p)
    for amp in f.cells.values():
        total = total + amp
    return total * _cell_measure(f.p, f.d, f.scale)


def inner(f: StepFunction, g: StepFunction) -> ScaledAmplitude:
    """``integral f * conj(g)``, computed on the cells of the finer function."""
    f._same_space(g)
    fine, coarse, swapped = _fine_coarse(f, g)
    s = coarse.scale
    total = ScaledAmplitude.zero(f.p)
    for key, amp in fine.cells.items():
        other = coarse.cells.get(vec_mod(key, s))
        if other is not None:
            total = total + (other * amp.conj() if swapped else amp * other.conj())
    return total * _cell_measure(f.p, f.d, fine.scale)


def norm2(f: StepFunction) -> ScaledAmplitude:
    return inner(f, f)


def evaluate(f: StepFunction, x: Sequence[PAdicRational]) -> ScaledAmplitude:
    amp = f.cells.get(vec_mod(tuple(x), f.scale))
    return amp if amp is not None else ScaledAmplitude.zero(f.p)


def is_mean_zero(f: StepFunction) -> bool:
    return integrate(f).is_zero()


def is_in_D0(f: StepFunction) -> bool:
    """Mean zero; local constancy and compact support hold by construction."""
    for key, amp in f.cells.items():
        if len(key) != f.d or vec_mod(key, f.scale) != key or amp.is_zero():
            return False
    return is_mean_zero(f)


# geometric actions ----------------------------------------------------


def translate(f: StepFunction, t: Sequence[PAdicRational]) -> StepFunction:
    """``x -> f(x + t)``."""
    t = tuple(PAdicRational.coerce(f.p, c) for c in t)
    if len(t) != f.d:
        raise ValueError("translation vector has wrong dimension")
    if all(c.is_zero() for c in t):
        return f
    s = f.scale
    cells = {vec_mod(vec_sub(key, t), s): amp for key, amp in f.cells.items()}
    return StepFunction._trusted(f.p, f.d, s, cells)


def dilate_unnormalized(f: StepFunction, gamma: int) -> StepFunction:
    """``x -> f(p**gamma x)`` without the unitary factor."""
    if gamma == 0:
        return f
    cells = {vec_shift(key, -gamma): amp for key, amp in f.cells.items()}
    return StepFunction._trusted(f.p, f.d, f.scale - gamma, cells)


def dilate(f: StepFunction, gamma: int) -> StepFunction:
    """``x -> p**(-d gamma / 2) f(p**gamma x)``."""
    if gamma == 0:
        return f
    return scale_amp(dilate_unnormalized(f, gamma), half_power(f.p, -f.d * gamma))


def _int_matrix(g, p: int, d: int):
    rows = getattr(g, "rows", g)
    m = intmat.as_matrix(
        [[int(PAdicRational.coerce(p, x)) if not isinstance(x, int) else x for x in row] for row in rows]
    )
    if len(m) != d:
        raise ValueError("matrix has wrong dimension")
    return m


def matrix_act(f: StepFunction, g) -> StepFunction:
    """``x -> f(g x)`` for ``g`` in ``O_d`` (integer matrix with unit determinant)."""
    p, d, s = f.p, f.d, f.scale
    m = _int_matrix(g, p, d)
    if intmat.det(m) % p == 0:
        raise ValueError("matrix_act needs a norm-preserving (unit determinant) matrix")
    if m == intmat.identity(d) or not f.cells:
        return f
    r = f.support_exponent()
    K = s + r
    N = p**K
    inv = intmat.inverse_mod(m, p, K)
    cells = {}
    for key, amp in f.cells.items():
        u = [int(c.shift(r)) for c in key]
        v = [sum(a * b for a, b in zip(row, u)) % N for row in inv]
        cells[tuple(PAdicRational(p, x, -r) for x in v)] = amp
    return StepFunction._trusted(p, d, s, cells)


# structure ------------------------------------------------------------


def compact(f: StepFunction) -> StepFunction:
    """Coarsest single-scale representation (unique, so usable as a canonical form)."""
    cached = f._compact
    if cached is not None:
        return cached
    p, d = f.p, f.d
    cur = f
    nsib = p**d
    while cur.cells:
        s = cur.scale - 1
        groups: dict = {}
        for key, amp in cur.cells.items():
            groups.setdefault(vec_mod(key, s), []).append(amp)
        if any(len(v) != nsib or any(a != v[0] for a in v[1:]) for v in groups.values()):
            break
        cur = StepFunction._trusted(p, d, s, {k: v[0] for k, v in groups.items()})
    object.__setattr__(f, "_compact", cur)
    return cur


def tensor(*factors: StepFunction) -> StepFunction:
    """``(x_1, .., x_d) -> prod_l f_l(x_l)`` for one-dimensional factors."""
    if not factors:
        raise ValueError("need at least one factor")
    p = factors[0].p
    for f in factors:
        if f.d != 1 or f.p != p:
            raise ValueError("tensor factors must be one-dimensional over the same prime")
    s = max(f.scale for f in factors)
    refined = [refine(f, s) for f in factors]
    cells = {}
    for combo in itertools.product(*(r.cells.items() for r in refined)):
        amp = combo[0][1]
        for _, a in combo[1:]:
            amp = amp * a
        if not amp.is_zero():
            cells[tuple(k[0] for k, _ in combo)] = amp
    return StepFunction._trusted(p, len(factors), s, cells)


# float oracle -----------------------------------------------------------


def _encode_for_oracle(f: StepFunction, r: int, W: int):
    p = f.p
    mod = p ** (f.scale + r)
    items = []
    for key, amp in f.cells.items():
        code = 0
        w = 1
        for c in key:
            code += int(c.shift(r)) * w
            w *= W
        items.append((code, amp.to_complex()))
    items.sort()
    comb = np.array([c for c, _ in items], dtype=np.int64)
    vals = np.array([v for _, v in items], dtype=np.complex128)
    return comb, vals, mod


def inner_float_oracle(f: StepFunction, g: StepFunction) -> complex:
    """Brute force over every coset of the common fine scale inside a box holding both supports."""
    f._same_space(g)
    p, d = f.p, f.d
    if not f.cells or not g.cells:
        return 0j
    S = max(f.scale, g.scale)
    r = max(f.support_exponent(), g.support_exponent(), -S)
    W = p ** (S + r)
    if float(W) ** d >= 2**62:
        raise OverflowError("oracle grid too large for int64 codes")
    fc, fv, fm = _encode_for_oracle(f, r, W)
    gc, gv, gm = _encode_for_oracle(g, r, W)
    total = _kernels.oracle_inner(fc, fv, fm, gc, gv, gm, d, W)
    return total * float(p) ** (-S * d)
