"""The wavelet basis ``psi_{gamma n J}(x) = p**(-d gamma/2) psi_J(p**gamma x - n)``.

``psi_J(x) = chi(J x / p) Omega(|x|_p)`` for ``J`` in ``{0..p-1}^d \\ {0}``.
The support of ``psi_{gamma n J}`` is the ball ``p**-gamma (n + Z_p^d)`` of
radius ``p**gamma``; it is constant on the ``p**d`` subballs of radius
``p**(gamma-1)``.

Analysis and synthesis run as an exact pyramid: integrals over cells are
pushed one scale up at a time, and at each parent ball the ``J``
coefficients are a character sum over its ``p**d`` children.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cyclotomic import ScaledAmplitude, char_pairing, half_power
from .functions import (
    StepFunction,
    dilate,
    inner,
    integrate,
    is_mean_zero,
    make_indicator,
    translate,
)
from .padic import Ball, CosetRep, PAdicRational, reduce_mod_Zp, vec_mod, vec_shift

__all__ = [
    "WaveletIndex",
    "NotMeanZeroError",
    "make_psi_J",
    "make_wavelet",
    "enumerate_indices",
    "analyze",
    "synthesize",
    "omega_coefficients",
    "parseval_partial",
]


class NotMeanZeroError(ValueError):
    """Raised by :func:`analyze` for inputs with a nonzero integral."""

    def __init__(self, integral: ScaledAmplitude):
        super().__init__(f"input is not mean zero: integral = {integral.to_complex():.6g} ({integral!r})")
        self.integral = integral


@dataclass(frozen=True)
class WaveletIndex:
    gamma: int
    n: CosetRep
    J: tuple

    def __post_init__(self):
        J = tuple(int(j) for j in self.J)
        object.__setattr__(self, "J", J)
        p = self.n.p
        if len(J) != self.n.d:
            raise ValueError("J and n have different dimensions")
        if not all(0 <= j < p for j in J):
            raise ValueError(f"J entries must lie in 0..{p - 1}")
        if not any(J):
            raise ValueError("J = 0 is excluded")

    @property
    def p(self) -> int:
        return self.n.p

    @property
    def d(self) -> int:
        return self.n.d

    @classmethod
    def make(cls, p: int, gamma: int, n: Sequence = None, J: Sequence[int] = (1,)) -> WaveletIndex:
        d = len(J)
        if n is None:
            coset = CosetRep.zero(p, d)
        elif isinstance(n, CosetRep):
            coset = n
        else:
            coset = reduce_mod_Zp(tuple(PAdicRational.coerce(p, c) for c in n))
        return cls(int(gamma), coset, tuple(J))

    def support(self) -> Ball:
        return Ball(self.gamma, self.n)

    def sort_key(self) -> tuple:
        return (self.gamma, self.n.sort_key(), self.J)


@lru_cache(maxsize=None)
def make_psi_J(p: int, J: tuple) -> StepFunction:
    """``chi(J x / p)`` on the unit ball, at constancy scale 1."""
    J = tuple(J)
    if not any(J):
        raise ValueError("J = 0 is excluded")
    d = len(J)
    k = tuple(PAdicRational(p, j, -1) for j in J)
    cells = {}
    for m in itertools.product(range(p), repeat=d):
        x = tuple(PAdicRational(p, c) for c in m)
        cells[x] = char_pairing(k, x).to_amplitude()
    return StepFunction._trusted(p, d, 1, cells)


@lru_cache(maxsize=None)
def make_wavelet(idx: WaveletIndex) -> StepFunction:
    """``dilate(translate(psi_J, -n), gamma)``."""
    psi = make_psi_J(idx.p, idx.J)
    shifted = translate(psi, tuple(-c for c in idx.n.to_pvec()))
    return dilate(shifted, idx.gamma)


def make_wavelet_direct(idx: WaveletIndex) -> StepFunction:
    """Same function built cell by cell: value ``p**(-d gamma/2) zeta_p**(J.m)`` on child ``m``."""
    p, d, g = idx.p, idx.d, idx.gamma
    norm = half_power(p, -d * g)
    base = vec_shift(idx.n.to_pvec(), -g)
    cells = {}
    for m in itertools.product(range(p), repeat=d):
        key = tuple(b + PAdicRational(p, c, -g) for b, c in zip(base, m))
        k = sum(j * c for j, c in zip(idx.J, m))
        cells[vec_mod(key, 1 - g)] = norm.mul_root(k, 1)
    return StepFunction._trusted(p, d, 1 - g, cells)


def psi_one(p: int, d: int) -> StepFunction:
    """``chi(x_1 / p) Omega(|x|_p)``, the orbit seed."""
    return make_psi_J(p, (1,) + (0,) * (d - 1))


def enumerate_indices(p: int, d: int, gamma_range: Iterable[int], max_digits: int) -> list[WaveletIndex]:
    """All indices with ``gamma`` in range and at most ``max_digits`` fractional digits per coordinate."""
    per_coord = [PAdicRational(p, k, -max_digits) for k in range(p**max_digits)]
    cosets = sorted(
        {reduce_mod_Zp(v) for v in itertools.product(per_coord, repeat=d)},
        key=CosetRep.sort_key,
    )
    Js = [J for J in itertools.product(range(p), repeat=d) if any(J)]
    return [WaveletIndex(g, n, J) for g in sorted(gamma_range) for n in cosets for J in Js]


def omega_coefficients(idx: WaveletIndex) -> ScaledAmplitude:
    """Closed form of ``<Omega, psi_idx>``: ``p**(-d gamma/2)`` if ``gamma >= 1`` and ``n = 0``."""
    if idx.gamma >= 1 and idx.n.is_zero():
        return half_power(idx.p, -idx.d * idx.gamma)
    return ScaledAmplitude.zero(idx.p)


def parseval_partial(p: int, d: int, Gamma: int) -> Fraction:
    """``sum_{gamma=1}^{Gamma} (p**d - 1) p**(-d gamma)``, which equals ``1 - p**(-d Gamma)``."""
    if Gamma < 1:
        raise ValueError("Gamma must be >= 1")
    q = Fraction(1, p**d)
    return sum(((p**d - 1) * q**g for g in range(1, Gamma + 1)), Fraction(0))


def parseval_enumerated(p: int, d: int, Gamma: int, max_digits: int = 1) -> Fraction:
    """The same partial sum, as ``sum |omega_coefficients|**2`` over enumerated indices."""
    total = ScaledAmplitude.zero(p)
    for idx in enumerate_indices(p, d, range(1, Gamma + 1), max_digits):
        total = total + omega_coefficients(idx).abs2()
    if not total.odd.is_zero():
        raise ArithmeticError("squared moduli left an odd sqrt(p) part")
    return total.even.as_fraction()


# ---------------------------------------------------------------------------
# analysis / synthesis


def analysis_window(f: StepFunction) -> range:
    """Levels that can carry coefficients of a mean-zero ``f``: ``[1 - scale, r]``.

    ``p**r`` bounds the support radius (about 0) and ``f`` is constant on
    balls of radius ``p**-scale``.
    """
    return range(1 - f.scale, f.support_exponent() + 1)


def _child_offsets(p: int, d: int, s: int) -> list:
    """Offsets of the ``p**d`` children, at scale ``s``, of a cell at scale ``s - 1``."""
    return [
        (m, tuple(PAdicRational(p, c, s - 1) for c in m))
        for m in itertools.product(range(p), repeat=d)
    ]


def analyze(f: StepFunction) -> dict[WaveletIndex, ScaledAmplitude]:
    """All nonzero ``<f, psi_idx>`` of a mean-zero step function."""
    total = integrate(f)
    if not total.is_zero():
        raise NotMeanZeroError(total)
    p, d = f.p, f.d
    Js = [J for J in itertools.product(range(p), repeat=d) if any(J)]
    coeffs: dict[WaveletIndex, ScaledAmplitude] = {}
    s = f.scale
    meas = Fraction(p) ** (-s * d)
    A = {k: v * meas for k, v in f.cells.items()}
    while A:
        gamma = 1 - s
        norm = half_power(p, -d * gamma)
        groups: dict = {}
        for key, a in A.items():
            parent = vec_mod(key, s - 1)
            m = tuple(int((c - q).shift(gamma)) for c, q in zip(key, parent))
            groups.setdefault(parent, []).append((m, a))
        new_A = {}
        for parent, kids in groups.items():
            n = reduce_mod_Zp(vec_shift(parent, gamma))
            for J in Js:
                acc = ScaledAmplitude.zero(p)
                for m, a in kids:
                    acc = acc + a.mul_root(-sum(j * c for j, c in zip(J, m)), 1)
                if not acc.is_zero():
                    coeffs[WaveletIndex(gamma, n, J)] = acc * norm
            tot = ScaledAmplitude.zero(p)
            for _, a in kids:
                tot = tot + a
            if not tot.is_zero():
                new_A[parent] = tot
        A = new_A
        s -= 1
    return coeffs


def synthesize(
    c: Mapping[WaveletIndex, ScaledAmplitude], p: int | None = None, d: int | None = None
) -> StepFunction:
    """``sum_idx c[idx] psi_idx``, assembled top-down one scale at a time."""
    items = [(k, v) for k, v in c.items() if not v.is_zero()]
    if not items:
        if p is None or d is None:
            raise ValueError("empty coefficient map needs explicit p and d")
        return StepFunction.zero(p, d)
    p = items[0][0].p
    d = items[0][0].d
    by_level: dict[int, dict] = {}
    for idx, amp in items:
        if (idx.p, idx.d) != (p, d):
            raise ValueError("mixed (p, d) in coefficient map")
        parent = vec_shift(idx.n.to_pvec(), -idx.gamma)
        by_level.setdefault(idx.gamma, {}).setdefault(parent, []).append((idx.J, amp))
    g_hi, g_lo = max(by_level), min(by_level)
    V: dict = {}
    for gamma in range(g_hi, g_lo - 1, -1):
        level = by_level.get(gamma, {})
        norm = half_power(p, -d * gamma)
        kids = _child_offsets(p, d, 1 - gamma)
        new_V = {}
        for parent in set(V) | set(level):
            base = V.get(parent)
            terms = level.get(parent, ())
            for m, off in kids:
                val = base if base is not None else ScaledAmplitude.zero(p)
                if terms:
                    acc = ScaledAmplitude.zero(p)
                    for J, amp in terms:
                        acc = acc + amp.mul_root(sum(j * x for j, x in zip(J, m)), 1)
                    val = val + acc * norm
                if not val.is_zero():
                    new_V[tuple(a + b for a, b in zip(parent, off))] = val
        V = new_V
    return StepFunction._trusted(p, d, 1 - g_lo, V)


def synthesize_direct(c: Mapping[WaveletIndex, ScaledAmplitude], p: int, d: int) -> StepFunction:
    """Reference synthesis: literally add up scaled basis functions."""
    out = StepFunction.zero(p, d)
    for idx, amp in c.items():
        out = out + make_wavelet(idx) * amp
    return out


def analyze_bruteforce(f: StepFunction, widen: int = 0) -> dict[WaveletIndex, ScaledAmplitude]:
    """Inner products against every wavelet whose support meets the support of ``f``.

    Scans ``analysis_window(f)`` widened by ``widen`` levels on each side.
    """
    p, d = f.p, f.d
    win = analysis_window(f)
    Js = [J for J in itertools.product(range(p), repeat=d) if any(J)]
    out = {}
    for gamma in range(win.start - widen, win.stop + widen):
        supports = {reduce_mod_Zp(vec_shift(vec_mod(key, -gamma), gamma)) for key in f.cells}
        for n in supports:
            for J in Js:
                idx = WaveletIndex(gamma, n, J)
                v = inner(f, make_wavelet(idx))
                if not v.is_zero():
                    out[idx] = v
    return out


def parseval_sum(c: Mapping[WaveletIndex, ScaledAmplitude], p: int) -> ScaledAmplitude:
    total = ScaledAmplitude.zero(p)
    for v in c.values():
        total = total + v.abs2()
    return total


def sorted_coefficients(c: Mapping[WaveletIndex, ScaledAmplitude]) -> list:
    return sorted(c.items(), key=lambda kv: kv[0].sort_key())


def omega(p: int, d: int) -> StepFunction:
    return make_indicator(Ball(0, CosetRep.zero(p, d)))


def is_wavelet_mean_zero(idx: WaveletIndex) -> bool:
    return is_mean_zero(make_wavelet(idx))
