"""JSON encodings.  Exact values are strings; floats appear only under a ``"float"`` key."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .cyclotomic import CyclotomicNumber, RootOfUnity, ScaledAmplitude
from .functions import StepFunction, compact
from .padic import CosetRep, PAdicRational, is_prime, vec_mod
from .wavelet import WaveletIndex, sorted_coefficients


class FormatError(ValueError):
    """Input JSON does not describe a valid object."""


def _need(obj: Mapping, key: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    return obj[key]


# scalars -----------------------------------------------------------------


def padic_to_json(x: PAdicRational) -> str:
    return str(x)


def padic_from_json(p: int, s: Any) -> PAdicRational:
    if isinstance(s, int):
        return PAdicRational(p, s)
    if not isinstance(s, str):
        raise FormatError(f"expected a p-adic number string, got {s!r}")
    try:
        return PAdicRational.parse(p, s)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def digits_to_json(x: PAdicRational, hi: int) -> dict:
    """Digits of a nonnegative canonical representative from its valuation up to exponent ``hi``."""
    if x.is_zero():
        return {"start": 0, "digits": []}
    return {"start": x.valuation, "digits": x.digits(x.valuation, hi)}


def digits_from_json(p: int, obj: Any) -> PAdicRational:
    start = _need(obj, "start")
    digits = _need(obj, "digits")
    if not isinstance(start, int) or not isinstance(digits, list):
        raise FormatError("digit array needs an integer start and a list of digits")
    m = 0
    for i, dgt in enumerate(digits):
        if not isinstance(dgt, int) or not 0 <= dgt < p:
            raise FormatError(f"digit {dgt!r} out of range for p={p}")
        m += dgt * p**i
    return PAdicRational(p, m, start)


def coset_to_json(n: CosetRep) -> list:
    return [{"start": b, "digits": list(ds)} if ds else {"start": 0, "digits": []} for b, ds in n.coords]


def coset_from_json(p: int, obj: Any) -> CosetRep:
    if not isinstance(obj, list):
        raise FormatError("coset representative must be a list of digit arrays")
    return CosetRep.from_pvec(tuple(digits_from_json(p, c) for c in obj))


def _frac(s: Any) -> Fraction:
    try:
        return Fraction(s) if isinstance(s, (int, str)) else Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def amp_to_json(a: ScaledAmplitude) -> dict:
    M = a.conductor
    z = a.to_complex()

    def part(c: CyclotomicNumber):
        return [str(Fraction(n, c.den)) for n in c.lifted(M)]

    return {"M": M, "even": part(a.even), "odd": part(a.odd), "float": [z.real, z.imag]}


def amp_from_json(p: int, obj: Any) -> ScaledAmplitude:
    if isinstance(obj, (int, str)):
        return ScaledAmplitude.rational(p, _frac(obj))
    M = _need(obj, "M")
    even = [_frac(c) for c in _need(obj, "even")]
    odd = [_frac(c) for c in obj.get("odd", [0] * len(even))]
    if len(even) != _phi(p, M) or len(odd) != _phi(p, M):
        raise FormatError(f"conductor {p}^{M} needs {_phi(p, M)} coefficients per part")
    try:
        return ScaledAmplitude(
            CyclotomicNumber.from_fractions(p, M, even), CyclotomicNumber.from_fractions(p, M, odd)
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(str(exc)) from exc


def _phi(p: int, M: int) -> int:
    return 1 if M == 0 else p**M - p ** (M - 1)


def root_to_json(r: RootOfUnity) -> dict:
    return {"M": r.M, "k": r.k}


def root_from_json(p: int, obj: Any) -> RootOfUnity:
    return RootOfUnity(p, _need(obj, "M"), _need(obj, "k"))


# functions and coefficient maps -------------------------------------------


def function_to_json(f: StepFunction, canonical: bool = True) -> dict:
    g = compact(f) if canonical else f
    cells = [
        {"rep": [digits_to_json(c, g.scale) for c in key], "amp": amp_to_json(amp)}
        for key, amp in g.sorted_cells()
    ]
    return {"p": g.p, "d": g.d, "scale": g.scale, "cells": cells}


def function_from_json(obj: Any) -> StepFunction:
    p = _need(obj, "p")
    d = _need(obj, "d")
    scale = _need(obj, "scale")
    if not (isinstance(p, int) and is_prime(p)):
        raise FormatError(f"p={p!r} is not a prime")
    if not (isinstance(d, int) and d >= 1) or not isinstance(scale, int):
        raise FormatError("d must be a positive integer and scale an integer")
    cells = {}
    for c in _need(obj, "cells"):
        rep = _need(c, "rep")
        if not isinstance(rep, list) or len(rep) != d:
            raise FormatError(f"cell representative must have {d} coordinates")
        key = vec_mod(tuple(digits_from_json(p, x) for x in rep), scale)
        if key in cells:
            raise FormatError("duplicate cell")
        cells[key] = amp_from_json(p, _need(c, "amp"))
    return StepFunction(p, d, scale, cells)


def index_to_json(idx: WaveletIndex) -> dict:
    return {"gamma": idx.gamma, "n": coset_to_json(idx.n), "J": list(idx.J)}


def index_from_json(p: int, obj: Any) -> WaveletIndex:
    return WaveletIndex(_need(obj, "gamma"), coset_from_json(p, _need(obj, "n")), tuple(_need(obj, "J")))


def coeffs_to_json(c: Mapping[WaveletIndex, ScaledAmplitude]) -> list:
    return [dict(index_to_json(k), amp=amp_to_json(v)) for k, v in sorted_coefficients(c)]


def coeffs_from_json(p: int, obj: Any) -> dict:
    if not isinstance(obj, list):
        raise FormatError("coefficient map must be a list")
    return {index_from_json(p, e): amp_from_json(p, _need(e, "amp")) for e in obj}


def matrix_to_json(p: int, rows) -> list:
    return [[str(PAdicRational.coerce(p, x)) for x in row] for row in rows]


def matrix_from_json(p: int, obj: Any) -> list:
    if not isinstance(obj, list) or not all(isinstance(r, list) and len(r) == len(obj) for r in obj):
        raise FormatError("matrix must be a square list of rows")
    return [[padic_from_json(p, x) for x in row] for row in obj]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
