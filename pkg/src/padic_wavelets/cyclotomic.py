"""Exact amplitudes: p-power roots of unity, Q(zeta_{p^M}) and a formal sqrt(p).

A :class:`CyclotomicNumber` is stored as integer numerators over a common
positive denominator, in the power basis ``1, z, ..., z**(phi-1)`` of
``Q(z)``, ``z = exp(2 pi i / p**M)``, reduced modulo
``Phi_{p^M}(X) = sum_{i<p} X**(i p**(M-1))``.  Values are always stored at
the smallest conductor that holds them, so structural equality is field
equality.

:class:`ScaledAmplitude` adjoins ``R`` with ``R**2 = p``.  ``R`` is kept
formal even when ``sqrt(p)`` already lies in ``Q(z)`` (``p = 1 mod 4``):
equality is then equality of the formal pair, which is what every identity
in this package needs.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .padic import PAdicRational

__all__ = [
    "RootOfUnity",
    "CyclotomicNumber",
    "ScaledAmplitude",
    "char",
    "char_pairing",
    "half_power",
]


def phi(p: int, M: int) -> int:
    return 1 if M == 0 else (p - 1) * p ** (M - 1)


def _reduce_full(p: int, M: int, full: list[int]) -> list[int]:
    """Reduce a coefficient vector indexed by Z/p^M onto the power basis."""
    if M == 0:
        return [full[0]]
    f = phi(p, M)
    step = p ** (M - 1)
    out = full[:f]
    for e in range(f, p**M):
        c = full[e]
        if c:
            base = e - f
            for i in range(p - 1):
                out[base + i * step] -= c
    return out


@lru_cache(maxsize=None)
def _root_floats(p: int, M: int) -> tuple:
    n = p**M
    return tuple(cmath.exp(2j * math.pi * e / n) for e in range(n))


class CyclotomicNumber:
    __slots__ = ("p", "M", "nums", "den")

    def __init__(self, p: int, M: int, nums: Sequence[int], den: int = 1):
        if len(nums) != phi(p, M):
            raise ValueError(f"expected {phi(p, M)} coefficients for conductor {p}^{M}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self._set(*_canonical(p, M, list(nums), den))

    def _set(self, p, M, nums, den):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def _make(cls, p, M, nums, den):
        obj = object.__new__(cls)
        obj._set(*_canonical(p, M, nums, den))
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def rational(cls, p: int, q) -> CyclotomicNumber:
        q = Fraction(q)
        return cls._make(p, 0, [q.numerator], q.denominator)

    @classmethod
    def root(cls, p: int, M: int, k: int) -> CyclotomicNumber:
        n = p**M
        full = [0] * n
        full[k % n] = 1
        return cls._make(p, M, _reduce_full(p, M, full), 1)

    @classmethod
    def from_fractions(cls, p: int, M: int, coeffs: Sequence) -> CyclotomicNumber:
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls._make(p, M, [int(c * den) for c in fr], den)

    # structure --------------------------------------------------------
    def coefficients(self) -> list[Fraction]:
        return [Fraction(n, self.den) for n in self.nums]

    def lifted(self, M: int) -> list[int]:
        """Numerators in the power basis of conductor ``p**M >= p**self.M``."""
        if M == self.M:
            return list(self.nums)
        if M < self.M:
            raise ValueError("cannot lower the conductor")
        out = [0] * phi(self.p, M)
        if self.M == 0:
            out[0] = self.nums[0]
            return out
        stride = self.p ** (M - self.M)
        for e, c in enumerate(self.nums):
            out[e * stride] = c
        return out

    def is_zero(self) -> bool:
        return self.M == 0 and self.nums[0] == 0

    def is_rational(self) -> bool:
        return self.M == 0

    def as_fraction(self) -> Fraction:
        if self.M != 0:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def as_root_multiple(self) -> tuple[Fraction, int, int] | None:
        """``(r, M, k)`` with ``self == r * zeta_{p^M}**k``, or ``None``."""
        p, M = self.p, self.M
        nz = [(e, c) for e, c in enumerate(self.nums) if c]
        if not nz:
            return None
        if len(nz) == 1:
            e, c = nz[0]
            return Fraction(c, self.den), M, e
        if M == 0 or len(nz) != p - 1:
            return None
        step = p ** (M - 1)
        base, c = nz[0]
        if base >= step:
            return None
        for i, (e, ci) in enumerate(nz):
            if e != base + i * step or ci != c:
                return None
        return Fraction(-c, self.den), M, base + phi(p, M)

    # arithmetic -------------------------------------------------------
    def _check(self, other: CyclotomicNumber):
        if other.p != self.p:
            raise ValueError(f"mixing primes {self.p} and {other.p}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(self.p, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        M = max(self.M, other.M)
        a, b = self.lifted(M), other.lifted(M)
        g = math.gcd(self.den, other.den)
        fa, fb = other.den // g, self.den // g
        return CyclotomicNumber._make(
            self.p, M, [x * fa + y * fb for x, y in zip(a, b)], self.den * fa
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._make(self.p, self.M, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(self.p, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber._make(
                self.p, self.M, [x * q.numerator for x in self.nums], self.den * q.denominator
            )
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        self._check(other)
        if self.M == 0:
            return other * Fraction(self.nums[0], self.den)
        if other.M == 0:
            return self * Fraction(other.nums[0], other.den)
        p = self.p
        M = max(self.M, other.M)
        n = p**M
        a, b = self.lifted(M), other.lifted(M)
        full = [0] * n
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in bnz:
                    k = i + j
                    if k >= n:
                        k -= n
                    full[k] += x * y
        return CyclotomicNumber._make(p, M, _reduce_full(p, M, full), self.den * other.den)

    __rmul__ = __mul__

    def mul_root(self, k: int, M: int) -> CyclotomicNumber:
        """Multiply by ``zeta_{p^M}**k``."""
        p = self.p
        k %= p**M
        if k == 0 or self.is_zero():
            return self
        Mt = max(M, self.M)
        n = p**Mt
        shift = k * p ** (Mt - M)
        full = [0] * n
        for e, c in enumerate(self.lifted(Mt)):
            if c:
                full[(e + shift) % n] += c
        return CyclotomicNumber._make(p, Mt, _reduce_full(p, Mt, full), self.den)

    def galois(self, t: int) -> CyclotomicNumber:
        """Apply the automorphism ``zeta -> zeta**t`` (``t`` prime to ``p``)."""
        if self.M == 0:
            return self
        p, M = self.p, self.M
        n = p**M
        full = [0] * n
        for e, c in enumerate(self.nums):
            if c:
                full[(e * t) % n] += c
        return CyclotomicNumber._make(p, M, _reduce_full(p, M, full), self.den)

    def conj(self) -> CyclotomicNumber:
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        return (self * self._co_norm()).as_fraction()

    def _co_norm(self) -> CyclotomicNumber:
        out = CyclotomicNumber.rational(self.p, 1)
        n = self.p**self.M
        for t in range(2, n):
            if t % self.p:
                out = out * self.galois(t)
        return out

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        co = self._co_norm()
        return co * (1 / (self * co).as_fraction())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    # floats -----------------------------------------------------------
    def to_complex(self) -> complex:
        roots = _root_floats(self.p, self.M)
        return sum(c * roots[e] for e, c in enumerate(self.nums) if c) / self.den + 0j

    # equality ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.M == 0 and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (
            self.M == other.M and self.den == other.den and self.nums == other.nums
            and (self.p == other.p or self.M == 0)
        )

    def __hash__(self):
        return hash((self.M, self.nums, self.den))

    def __repr__(self):
        terms = [f"{Fraction(c, self.den)}*z^{e}" for e, c in enumerate(self.nums) if c]
        return f"Cyclo(p={self.p}, M={self.M}: {' + '.join(terms) or '0'})"


def _canonical(p: int, M: int, nums: list[int], den: int):
    # lower the conductor while the value lies in a subfield
    while M >= 1:
        if M == 1:
            if any(nums[1:]):
                break
            nums = nums[:1]
        else:
            if any(c for e, c in enumerate(nums) if e % p):
                break
            nums = nums[::p]
        M -= 1
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = math.gcd(den, *nums)
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    if not any(nums):
        den = 1
    return p, M, tuple(nums), den


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2 pi i k / p**M)``, reduced so that ``p`` does not divide ``k`` unless ``M == 0``."""

    p: int
    M: int
    k: int

    def __post_init__(self):
        M, k = self.M, self.k % self.p**self.M
        while M > 0 and k % self.p == 0:
            k //= self.p
            M -= 1
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "k", k)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        M = max(self.M, other.M)
        k = self.k * self.p ** (M - self.M) + other.k * self.p ** (M - other.M)
        return RootOfUnity(self.p, M, k)

    def conj(self) -> RootOfUnity:
        return RootOfUnity(self.p, self.M, -self.k)

    def to_cyclotomic(self) -> CyclotomicNumber:
        return CyclotomicNumber.root(self.p, self.M, self.k)

    def to_amplitude(self) -> ScaledAmplitude:
        return ScaledAmplitude(self.to_cyclotomic())

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.k / self.p**self.M)


def char(x: PAdicRational) -> RootOfUnity:
    """The additive character ``exp(2 pi i {x})``."""
    f = x.fractional_part()
    den = f.denominator
    M = 0
    while den > 1:
        den //= x.p
        M += 1
    return RootOfUnity(x.p, M, f.numerator)


def char_pairing(k: Sequence[PAdicRational], x: Sequence[PAdicRational]) -> RootOfUnity:
    """``char(sum_l k_l x_l)``."""
    if len(k) != len(x):
        raise ValueError("dimension mismatch")
    p = (k[0] if k else x[0]).p
    total = PAdicRational(p, 0)
    for a, b in zip(k, x):
        total = total + a * b
    return char(total)


class ScaledAmplitude:
    """``even + odd * R`` with ``R**2 = p``; both parts cyclotomic."""

    __slots__ = ("even", "odd")

    def __init__(self, even: CyclotomicNumber, odd: CyclotomicNumber | None = None):
        if odd is None:
            odd = CyclotomicNumber.rational(even.p, 0)
        elif odd.p != even.p:
            raise ValueError("mixing primes")
        object.__setattr__(self, "even", even)
        object.__setattr__(self, "odd", odd)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledAmplitude is immutable")

    @property
    def p(self) -> int:
        return self.even.p

    @classmethod
    def rational(cls, p: int, q) -> ScaledAmplitude:
        return cls(CyclotomicNumber.rational(p, q))

    @classmethod
    def zero(cls, p: int) -> ScaledAmplitude:
        return cls.rational(p, 0)

    @classmethod
    def one(cls, p: int) -> ScaledAmplitude:
        return cls.rational(p, 1)

    @classmethod
    def root(cls, p: int, M: int, k: int) -> ScaledAmplitude:
        return cls(CyclotomicNumber.root(p, M, k))

    @property
    def conductor(self) -> int:
        return max(self.even.M, self.odd.M)

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def _wrap(self, other):
        if isinstance(other, ScaledAmplitude):
            if other.p != self.p:
                raise ValueError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return ScaledAmplitude.rational(self.p, other)
        if isinstance(other, CyclotomicNumber):
            return ScaledAmplitude(other)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return ScaledAmplitude(self.even + o.even, self.odd + o.odd)

    __radd__ = __add__

    def __neg__(self):
        return ScaledAmplitude(-self.even, -self.odd)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return ScaledAmplitude(self.even - o.even, self.odd - o.odd)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.even, self.odd, o.even, o.odd
        if b.is_zero() and d.is_zero():
            return ScaledAmplitude(a * c)
        if a.is_zero() and c.is_zero():
            return ScaledAmplitude(b * d * self.p)
        if b.is_zero():
            return ScaledAmplitude(a * c, a * d)
        if d.is_zero():
            return ScaledAmplitude(a * c, b * c)
        return ScaledAmplitude(a * c + b * d * self.p, a * d + b * c)

    __rmul__ = __mul__

    def mul_root(self, k: int, M: int) -> ScaledAmplitude:
        return ScaledAmplitude(self.even.mul_root(k, M), self.odd.mul_root(k, M))

    def conj(self) -> ScaledAmplitude:
        return ScaledAmplitude(self.even.conj(), self.odd.conj())

    def abs2(self) -> ScaledAmplitude:
        return self * self.conj()

    def inverse(self) -> ScaledAmplitude:
        """``(a - bR) / (a**2 - p b**2)``; fails only if that denominator vanishes."""
        a, b = self.even, self.odd
        if b.is_zero():
            return ScaledAmplitude(a.inverse())
        den = a * a - b * b * self.p
        if den.is_zero():
            raise ZeroDivisionError(f"{self!r} has no inverse in the formal ring")
        inv = den.inverse()
        return ScaledAmplitude(a * inv, -b * inv)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def to_complex(self) -> complex:
        return self.even.to_complex() + math.sqrt(self.p) * self.odd.to_complex()

    def __complex__(self):
        return self.to_complex()

    def __eq__(self, other):
        o = self._wrap(other) if not isinstance(other, ScaledAmplitude) else other
        if o is NotImplemented:
            return NotImplemented
        return self.even == o.even and self.odd == o.odd

    def __hash__(self):
        return hash((self.even, self.odd))

    def __repr__(self):
        if self.odd.is_zero():
            return f"Amp({self.even!r})"
        return f"Amp({self.even!r} + R*{self.odd!r})"


def half_power(p: int, k: int) -> ScaledAmplitude:
    """``p**(k/2)`` as an exact amplitude."""
    if k % 2 == 0:
        return ScaledAmplitude.rational(p, Fraction(p) ** (k // 2))
    zero = CyclotomicNumber.rational(p, 0)
    return ScaledAmplitude(zero, CyclotomicNumber.rational(p, Fraction(p) ** ((k - 1) // 2)))


def amp_sum(p: int, values: Iterable[ScaledAmplitude]) -> ScaledAmplitude:
    total = ScaledAmplitude.zero(p)
    for v in values:
        total = total + v
    return total
