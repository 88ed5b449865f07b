"""Windowed multiresolution ladder built on the unit-ball indicator.

``V_L`` is the span of functions constant on cosets of ``p**L Z_p^d``; its
windowed basis is ``p**(d L / 2)`` times the indicators of those cosets that
lie in a region ball.  The wavelet space at level ``L`` is spanned by the
``psi_{gamma n J}`` with ``gamma = -L``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import ScaledAmplitude, half_power
from .functions import StepFunction, inner, make_indicator, scale_amp, tensor
from .gram import gram_nonzero
from .linalg import solve_many
from .padic import Ball, CosetRep, PAdicRational, ball_canonical, reduce_mod_Zp, vec_mod, vec_shift
from .wavelet import WaveletIndex, make_psi_J, make_wavelet

__all__ = [
    "WindowedSpaceBasis",
    "scaling_phi",
    "v_space_basis",
    "w_space_basis",
    "tensor_wavelet",
    "verify_mra_ladder",
    "project_V",
    "unit_window",
]


@dataclass(frozen=True)
class WindowedSpaceBasis:
    level: int
    window: Ball
    vectors: tuple


def unit_window(p: int, d: int) -> Ball:
    return Ball(0, CosetRep.zero(p, d))


def scaling_phi(p: int, d: int = 1) -> StepFunction:
    return make_indicator(unit_window(p, d))


def _cells(level: int, window: Ball) -> list:
    """Scale-``level`` cells of the smallest region containing ``window`` and tiled by such cells."""
    p, d = window.p, window.d
    region_scale = min(level, window.scale)
    base = vec_mod(window.point(), region_scale)
    offsets = [PAdicRational(p, k, region_scale) for k in range(p ** (level - region_scale))]
    return [tuple(b + o for b, o in zip(base, combo)) for combo in itertools.product(offsets, repeat=d)]


def v_space_basis(p: int, d: int, level: int, window: Ball) -> WindowedSpaceBasis:
    norm = half_power(p, d * level)
    vecs = []
    for cell in _cells(level, window):
        vecs.append(scale_amp(make_indicator(ball_canonical(level, cell)), norm))
    return WindowedSpaceBasis(level, window, tuple(vecs))


def w_space_basis(p: int, d: int, level: int, window: Ball) -> list:
    """Wavelets ``psi_{-level, n, J}`` supported on the cells of ``v_space_basis(level)``."""
    Js = [J for J in itertools.product(range(p), repeat=d) if any(J)]
    out = []
    for cell in _cells(level, window):
        n = reduce_mod_Zp(vec_shift(cell, -level))
        for J in Js:
            out.append(WaveletIndex(-level, n, J))
    return out


def tensor_wavelet(p: int, J: tuple) -> StepFunction:
    """``prod_l f_l(x_l)`` with ``f_l`` the one-dimensional ``psi_{j_l}``, or the indicator when ``j_l = 0``."""
    J = tuple(int(j) for j in J)
    if not any(J):
        raise ValueError("J = 0 gives the scaling function, not a wavelet")
    return tensor(*(make_psi_J(p, (j,)) if j else scaling_phi(p, 1) for j in J))


def _window_repr(w: Ball) -> dict:
    return {"gamma": w.gamma, "center": [[b, list(ds)] for b, ds in w.center.coords]}


def verify_mra_ladder(p: int, d: int, level: int, window: Ball | None = None) -> list[dict]:
    """Exact checks of ``V_L ⊂ V_{L+1}`` and ``V_{L+1} = V_L ⊕ W_L`` on a window.

    Returns report entries ``{"check", "level", "window", "pass", "witness"?}``.
    """
    window = window or unit_window(p, d)
    region = ball_canonical(min(level, window.scale), window.point())
    V = list(v_space_basis(p, d, level, region).vectors)
    V1 = list(v_space_basis(p, d, level + 1, region).vectors)
    W = [make_wavelet(i) for i in w_space_basis(p, d, level, region)]
    win = _window_repr(window)
    report = []

    def entry(check, ok, witness=None):
        e = {"check": check, "level": level, "window": win, "pass": bool(ok)}
        if witness is not None:
            e["witness"] = witness
        report.append(e)

    # (a) nesting
    bad = None
    for i, v in enumerate(V):
        rebuilt = StepFunction.zero(p, d)
        for u in V1:
            c = inner(v, u)
            if not c.is_zero():
                rebuilt = rebuilt + u * c
        if rebuilt != v:
            bad = i
            break
    entry("nested", bad is None, None if bad is None else {"vector": bad})

    # (b) orthonormality of V_L together with W_L, and the dimension count
    combined = V + W
    gram = gram_nonzero(combined)
    one = ScaledAmplitude.one(p)
    defects = [(i, j) for (i, j), v in gram.items() if (i != j or v != one)]
    defects += [(i, i) for i in range(len(combined)) if (i, i) not in gram]
    entry(
        "orthonormal",
        not defects,
        None if not defects else {"pairs": [list(x) for x in sorted(defects)[:5]]},
    )
    entry(
        "dimension",
        len(combined) == len(V1),
        {"combined": len(combined), "finer": len(V1)},
    )

    # (c) change of basis is invertible: each finer vector is an exact combination
    ok = len(combined) == len(V1)
    failed = None
    if ok:
        C = [[inner(c, u) for u in V1] for c in combined]
        Ct = [[C[i][k] for i in range(len(combined))] for k in range(len(V1))]
        zero = ScaledAmplitude.zero(p)
        eye = [[one if j == k else zero for j in range(len(V1))] for k in range(len(V1))]
        try:
            solutions = solve_many(Ct, eye)
        except ZeroDivisionError:
            solutions, failed = [], -1
        for k, (u, a) in enumerate(zip(V1, solutions)):
            rebuilt = StepFunction.zero(p, d)
            for coef, c in zip(a, combined):
                if not coef.is_zero():
                    rebuilt = rebuilt + c * coef
            if rebuilt != u:
                failed = k
                break
    entry("spans", ok and failed is None, None if failed is None else {"finer_vector": failed})
    return report


def project_V(f: StepFunction, level: int) -> StepFunction:
    """Orthogonal projection onto ``V_level``: averages over cosets of ``p**level Z_p^d``."""
    if f.scale <= level:
        return f
    p, d = f.p, f.d
    sums: dict = {}
    for key, amp in f.cells.items():
        parent = vec_mod(key, level)
        sums[parent] = sums.get(parent, ScaledAmplitude.zero(p)) + amp
    w = Fraction(1, p ** ((f.scale - level) * d))
    cells = {k: v * w for k, v in sums.items() if not v.is_zero()}
    return StepFunction._trusted(p, d, level, cells)


def tensor_of_wavelets(indices) -> StepFunction:
    """``prod_l psi_{idx_l}(x_l)`` for one-dimensional indices (the tensor basis)."""
    return tensor(*(make_wavelet(i) for i in indices))
