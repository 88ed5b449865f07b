"""Exact Gram scans over many "root monomial" step functions.

A root monomial has every amplitude of the form ``c * zeta_{p^M}**k`` with
one common scalar ``c = r * R**parity``.  Every wavelet and every group
translate of one is of this form, and for such families each inner product
is ``c_i conj(c_j) p**(-s d)`` times an integer combination of roots of
unity, which the kernels compute as an exact histogram.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .cyclotomic import CyclotomicNumber, ScaledAmplitude, half_power
from .functions import StepFunction, inner

__all__ = ["RootMonomial", "as_root_monomial", "gram_nonzero", "orthonormality_defects"]


@dataclass(frozen=True)
class RootMonomial:
    r: Fraction
    parity: int
    M: int
    exps: dict  # cell key -> exponent mod p**M

    def scalar(self, p: int) -> ScaledAmplitude:
        return ScaledAmplitude.rational(p, self.r) * half_power(p, self.parity)


def as_root_monomial(f: StepFunction) -> RootMonomial | None:
    p = f.p
    parts = []
    for key, amp in f.cells.items():
        if amp.odd.is_zero():
            parity, part = 0, amp.even
        elif amp.even.is_zero():
            parity, part = 1, amp.odd
        else:
            return None
        rm = part.as_root_multiple()
        if rm is None:
            return None
        r, M, k = rm
        if p == 2 and r < 0:
            # -1 is itself a 2-power root of unity
            r = -r
            if M == 0:
                M, k = 1, 1
            else:
                k += 2 ** (M - 1)
        parts.append((key, parity, r, M, k))
    if not parts:
        return None
    _, parity0, r0, _, _ = parts[0]
    if any(par != parity0 or r != r0 for _, par, r, _, _ in parts):
        return None
    M = max(M for *_, M, _ in parts)
    exps = {key: (k * p ** (M - Mk)) % p**M for key, _, _, Mk, k in parts}
    return RootMonomial(r0, parity0, M, exps)


def _encode(functions: Sequence[StepFunction], monos: Sequence[RootMonomial], M: int):
    p, d = functions[0].p, functions[0].d
    r = max(f.support_exponent() for f in functions)
    S = max(f.scale for f in functions)
    W = p ** (S + r)
    if float(W) ** d >= 2**62:
        raise OverflowError("window too large for int64 cell codes")
    codes, combined, exps, offsets, mods = [], [], [], [0], []
    for f, mono in zip(functions, monos):
        rows = []
        lift = p ** (M - mono.M)
        for key, e in mono.exps.items():
            u = [int(c.shift(r)) for c in key]
            comb = 0
            w = 1
            for x in u:
                comb += x * w
                w *= W
            rows.append((comb, u, e * lift))
        rows.sort(key=lambda t: t[0])
        for comb, u, e in rows:
            combined.append(comb)
            codes.append(u)
            exps.append(e)
        offsets.append(len(combined))
        mods.append(p ** (f.scale + r))
    return (
        np.array(codes, dtype=np.int64).reshape(len(codes), d),
        np.array(combined, dtype=np.int64),
        np.array(exps, dtype=np.int64),
        np.array(offsets, dtype=np.int64),
        np.array(mods, dtype=np.int64),
        W,
    )


def gram_nonzero(functions: Sequence[StepFunction], backend: str | None = None) -> dict:
    """Exact nonzero entries ``(i, j) -> <f_i, f_j>``, ``i <= j``, of a root-monomial family.

    Falls back to pairwise exact :func:`inner` if some member is not a root monomial.
    """
    functions = list(functions)
    if not functions:
        return {}
    p, d = functions[0].p, functions[0].d
    monos = [as_root_monomial(f) for f in functions]
    if any(m is None for m in monos):
        out = {}
        for i, f in enumerate(functions):
            for j in range(i, len(functions)):
                v = inner(f, functions[j])
                if not v.is_zero():
                    out[(i, j)] = v
        return out
    M = max(m.M for m in monos)
    codes, combined, exps, offsets, mods, W = _encode(functions, monos, M)
    backend = backend or _kernels.BACKEND
    kernel = _kernels.gram_pairs_numba if backend == "numba" else _kernels.gram_pairs_numpy
    pairs, vals = kernel(codes, combined, exps, offsets, mods, W, p, M)
    scalars = [m.scalar(p) for m in monos]
    out = {}
    for (i, j), row in zip(pairs.tolist(), vals.tolist()):
        s_fine = max(functions[i].scale, functions[j].scale)
        cyc = CyclotomicNumber(p, M, row) if M > 0 else CyclotomicNumber.rational(p, row[0])
        amp = scalars[i] * scalars[j].conj() * ScaledAmplitude(cyc) * (Fraction(p) ** (-s_fine * d))
        out[(i, j)] = amp
    return out


def orthonormality_defects(functions: Sequence[StepFunction], backend: str | None = None) -> list:
    """Pairs whose exact inner product differs from the Kronecker delta."""
    one = ScaledAmplitude.one(functions[0].p) if functions else None
    g = gram_nonzero(functions, backend)
    bad = [(i, j, v) for (i, j), v in g.items() if (v != one if i == j else True)]
    bad += [(i, i, ScaledAmplitude.zero(functions[0].p)) for i in range(len(functions)) if (i, i) not in g]
    return sorted(bad, key=lambda t: (t[0], t[1]))
