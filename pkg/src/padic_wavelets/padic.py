"""Exact p-adic scalars with finite expansions, vectors, cosets and balls.

Only numbers of the form ``m * p**v`` are representable.  That is all a
locally constant computation ever needs: every function in this package
factors through a finite quotient ``p**-r Z_p^d / p**s Z_p^d``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "PAdicRational",
    "PAdicContext",
    "PVec",
    "CosetRep",
    "Ball",
    "is_prime",
    "padic_norm",
    "vec_norm",
    "fractional_part",
    "reduce_mod_Zp",
    "ball_canonical",
]

_STR_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*(\d+)\s*\^\s*([+-]?\d+)\s*$")

Scalar = Union["PAdicRational", int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PAdicRational:
    """The number ``mantissa * p**valuation`` with ``p`` not dividing the mantissa."""

    __slots__ = ("p", "mantissa", "valuation")

    def __init__(self, p: int, mantissa: int, valuation: int = 0):
        mantissa = int(mantissa)
        valuation = int(valuation)
        if mantissa == 0:
            valuation = 0
        else:
            while mantissa % p == 0:
                mantissa //= p
                valuation += 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "valuation", valuation)

    def __setattr__(self, name, value):
        raise AttributeError("PAdicRational is immutable")

    @classmethod
    def _raw(cls, p: int, mantissa: int, valuation: int) -> PAdicRational:
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "mantissa", mantissa)
        object.__setattr__(obj, "valuation", valuation)
        return obj

    # construction -----------------------------------------------------
    @classmethod
    def from_fraction(cls, p: int, x: Union[Fraction, int]) -> PAdicRational:
        x = Fraction(x)
        den = x.denominator
        v = 0
        while den % p == 0:
            den //= p
            v -= 1
        if den != 1:
            raise ValueError(f"{x} has no finite {p}-adic expansion")
        return cls(p, x.numerator, v)

    @classmethod
    def parse(cls, p: int, text: str) -> PAdicRational:
        """Parse ``"m*p^v"``; plain integers and ``"a/b"`` fractions are accepted too."""
        m = _STR_RE.match(text)
        if m:
            base = int(m.group(2))
            if base != p:
                raise ValueError(f"prime mismatch in {text!r}: expected {p}")
            return cls(p, int(m.group(1)), int(m.group(3)))
        try:
            return cls.from_fraction(p, Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse p-adic number {text!r}") from exc

    @classmethod
    def coerce(cls, p: int, x: Scalar) -> PAdicRational:
        if isinstance(x, PAdicRational):
            if x.p != p:
                raise ValueError(f"mixing primes {x.p} and {p}")
            return x
        if isinstance(x, str):
            return cls.parse(p, x)
        return cls.from_fraction(p, x)

    # conversions ------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if self.valuation >= 0:
            return Fraction(self.mantissa * self.p**self.valuation)
        return Fraction(self.mantissa, self.p ** (-self.valuation))

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def is_integral(self) -> bool:
        return self.mantissa == 0 or self.valuation >= 0

    def __int__(self) -> int:
        if not self.is_integral():
            raise ValueError(f"{self} is not an integer")
        return self.mantissa * self.p**self.valuation

    # arithmetic -------------------------------------------------------
    def _other(self, other) -> PAdicRational:
        if isinstance(other, PAdicRational):
            if other.p != self.p:
                raise ValueError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdicRational.from_fraction(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.mantissa == 0:
            return o
        if o.mantissa == 0:
            return self
        v = min(self.valuation, o.valuation)
        m = self.mantissa * self.p ** (self.valuation - v) + o.mantissa * self.p ** (o.valuation - v)
        return PAdicRational(self.p, m, v)

    __radd__ = __add__

    def __neg__(self):
        return PAdicRational._raw(self.p, -self.mantissa, self.valuation)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.mantissa == 0 or o.mantissa == 0:
            return PAdicRational._raw(self.p, 0, 0)
        return PAdicRational._raw(self.p, self.mantissa * o.mantissa, self.valuation + o.valuation)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.mantissa == 0:
            raise ZeroDivisionError("division by p-adic zero")
        q, r = divmod(self.mantissa, o.mantissa)
        if r:
            raise ValueError(f"{self} / {o} has no finite {self.p}-adic expansion")
        return PAdicRational(self.p, q, self.valuation - o.valuation)

    def shift(self, k: int) -> PAdicRational:
        """Multiply by ``p**k``."""
        if self.mantissa == 0:
            return self
        return PAdicRational._raw(self.p, self.mantissa, self.valuation + k)

    # p-adic structure -------------------------------------------------
    def norm(self) -> Fraction:
        if self.mantissa == 0:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def fractional_part(self) -> Fraction:
        """Sum of the negative-exponent digits, a rational in [0, 1)."""
        if self.mantissa == 0 or self.valuation >= 0:
            return Fraction(0)
        den = self.p ** (-self.valuation)
        return Fraction(self.mantissa % den, den)

    def mod_pow(self, s: int) -> PAdicRational:
        """Canonical representative of ``self + p**s Z_p``: the one in ``[0, p**s)``."""
        v = self.valuation
        if self.mantissa == 0 or v >= s:
            return _zero(self.p)
        m = self.mantissa % self.p ** (s - v)
        if m == self.mantissa:
            return self
        # m = mantissa mod p^(s-v) keeps the unit digit, so valuation is unchanged
        return PAdicRational._raw(self.p, m, v)

    def digits(self, lo: int, hi: int) -> list[int]:
        """Digits ``x_lo .. x_{hi-1}`` of the p-adic expansion (requires ``lo <= valuation``)."""
        if self.mantissa == 0:
            return [0] * max(hi - lo, 0)
        if lo > self.valuation:
            raise ValueError("lo above valuation would drop digits")
        n = self.mantissa * self.p ** (self.valuation - lo)
        n %= self.p ** max(hi - lo, 0)
        out = []
        for _ in range(hi - lo):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    # comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, PAdicRational):
            return (
                self.mantissa == other.mantissa
                and self.valuation == other.valuation
                and (self.p == other.p or self.mantissa == 0)
            )
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.mantissa, self.valuation))

    def sort_key(self) -> Fraction:
        return self.to_fraction()

    def __repr__(self):
        return f"PAdicRational(p={self.p}, {self.mantissa}, {self.valuation})"

    def __str__(self):
        return f"{self.mantissa}*{self.p}^{self.valuation}"

    def __reduce__(self):
        return (PAdicRational, (self.p, self.mantissa, self.valuation))


_ZEROS: dict[int, PAdicRational] = {}


def _zero(p: int) -> PAdicRational:
    z = _ZEROS.get(p)
    if z is None:
        z = _ZEROS[p] = PAdicRational._raw(p, 0, 0)
    return z


PVec = tuple  # tuple[PAdicRational, ...] of the ambient dimension


def padic_norm(x: PAdicRational) -> Fraction:
    return x.norm()


def vec_norm(x: Sequence[PAdicRational]) -> Fraction:
    return max((c.norm() for c in x), default=Fraction(0))


def vec_valuation(x: Sequence[PAdicRational]) -> int | None:
    """Minimum coordinate valuation, or ``None`` for the zero vector."""
    vals = [c.valuation for c in x if c.mantissa]
    return min(vals) if vals else None


def fractional_part(x: PAdicRational) -> Fraction:
    return x.fractional_part()


def vec_add(x: Sequence[PAdicRational], y: Sequence[PAdicRational]) -> PVec:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence[PAdicRational], y: Sequence[PAdicRational]) -> PVec:
    return tuple(a - b for a, b in zip(x, y))


def vec_shift(x: Sequence[PAdicRational], k: int) -> PVec:
    return tuple(c.shift(k) for c in x)


def vec_mod(x: Sequence[PAdicRational], s: int) -> PVec:
    return tuple(c.mod_pow(s) for c in x)


def vec_key(x: Sequence[PAdicRational]) -> tuple:
    """Deterministic sort key for vectors."""
    return tuple(c.to_fraction() for c in x)


@dataclass(frozen=True)
class PAdicContext:
    """Ambient prime and dimension, fixed once and shared by everything built from it."""

    p: int
    d: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")

    def scalar(self, x: Union[Scalar, str]) -> PAdicRational:
        return PAdicRational.coerce(self.p, x)

    def vec(self, *coords) -> PVec:
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates, got {len(coords)}")
        return tuple(self.scalar(c) for c in coords)

    def zero(self) -> PVec:
        return (_zero(self.p),) * self.d

    def unit(self, i: int) -> PVec:
        return tuple(PAdicRational(self.p, int(j == i)) for j in range(self.d))

    def check(self, x: Sequence[PAdicRational]) -> None:
        if len(x) != self.d:
            raise ValueError(f"vector of length {len(x)} in dimension {self.d}")
        for c in x:
            if c.p != self.p:
                raise ValueError(f"mixing primes {c.p} and {self.p}")


@dataclass(frozen=True, order=True)
class CosetRep:
    """A class of ``Q_p^d / Z_p^d``: per coordinate, digits ``n_beta .. n_{-1}``.

    ``coords[l] == (beta, digits)`` with ``digits[0]`` the nonzero digit at
    exponent ``beta``; the zero class of a coordinate is ``(0, ())``.
    """

    p: int
    coords: tuple

    @classmethod
    def from_pvec(cls, x: Sequence[PAdicRational]) -> CosetRep:
        return reduce_mod_Zp(x)

    @classmethod
    def zero(cls, p: int, d: int) -> CosetRep:
        return cls(p, ((0, ()),) * d)

    @classmethod
    def from_digits(cls, p: int, coords: Iterable) -> CosetRep:
        """Build from ``(beta, digits)`` pairs, validating and trimming to canonical form."""
        return reduce_mod_Zp(tuple(_digits_value(p, b, ds) for b, ds in coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(not ds for _, ds in self.coords)

    def to_pvec(self) -> PVec:
        return tuple(_digits_value(self.p, b, ds) for b, ds in self.coords)

    def max_digits(self) -> int:
        return max((len(ds) for _, ds in self.coords), default=0)

    def sort_key(self) -> tuple:
        return tuple(c.to_fraction() for c in self.to_pvec())


def _digits_value(p: int, beta: int, digits: Sequence[int]) -> PAdicRational:
    m = 0
    for i, dgt in enumerate(digits):
        if not 0 <= dgt < p:
            raise ValueError(f"digit {dgt} out of range for p={p}")
        m += dgt * p**i
    return PAdicRational(p, m, beta)


def reduce_mod_Zp(x: Sequence[PAdicRational]) -> CosetRep:
    if not x:
        raise ValueError("empty vector")
    p = x[0].p
    coords = []
    for c in x:
        r = c.mod_pow(0)
        if r.mantissa == 0:
            coords.append((0, ()))
        else:
            coords.append((r.valuation, tuple(r.digits(r.valuation, 0))))
    return CosetRep(p, tuple(coords))


@dataclass(frozen=True)
class Ball:
    """The ball ``{x : |p**gamma x - n|_p <= 1}``, of radius ``p**gamma``.

    ``scale = -gamma`` is the constancy scale of its indicator (the ball is a
    coset of ``p**scale Z_p^d``).
    """

    gamma: int
    center: CosetRep

    @property
    def p(self) -> int:
        return self.center.p

    @property
    def d(self) -> int:
        return self.center.d

    @property
    def scale(self) -> int:
        return -self.gamma

    @property
    def radius(self) -> Fraction:
        return Fraction(self.p) ** self.gamma

    def point(self) -> PVec:
        """Canonical point of the ball: ``p**-gamma n``, in ``[0, p**scale)`` per coordinate."""
        return vec_shift(self.center.to_pvec(), -self.gamma)

    def contains(self, x: Sequence[PAdicRational]) -> bool:
        y = vec_sub(vec_shift(x, self.gamma), self.center.to_pvec())
        return vec_norm(y) <= 1

    def contains_ball(self, other: Ball) -> bool:
        return other.gamma <= self.gamma and self.contains(other.point())


def ball_canonical(scale: int, center: Sequence[PAdicRational]) -> Ball:
    """The unique ``(gamma, n)`` describing ``{x : |x - center|_p <= p**-scale}``."""
    gamma = -scale
    return Ball(gamma, reduce_mod_Zp(vec_shift(center, gamma)))
