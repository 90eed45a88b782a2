"""Exact scalar arithmetic: rationals, factorial products, quadratic surds.

Every quantity in this package is either a rational number or a rational
multiple of a single square root.  Rationals are gmpy2.mpq instances
(reduced form, positive denominator, structural equality), exposed here
under the name Rat.  Surd wraps coeff * sqrt(radicand) with the radicand
kept squarefree, which makes equality and rationality checks syntactic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from gmpy2 import mpq

Rat = mpq

RatLike = Union[int, mpq]


def rat(p, q=1) -> Rat:
    """Exact rational p/q."""
    return mpq(p, q)


def is_integer(q) -> bool:
    return mpq(q).denominator == 1


def rat_str(q) -> str:
    """Render an exact value as a decimal digit string, 'p' or 'p/q'."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def falling(a, k: int):
    """Falling factorial a (a-1) ... (a-k+1), with k >= 0 terms."""
    if k < 0:
        raise ValueError(f"falling: k must be nonnegative, got {k}")
    out = 1
    for i in range(k):
        out = out * (a - i)
    return out


def rising(a, k: int):
    """Rising factorial a (a+1) ... (a+k-1), with k >= 0 terms."""
    if k < 0:
        raise ValueError(f"rising: k must be nonnegative, got {k}")
    out = 1
    for i in range(k):
        out = out * (a + i)
    return out


def binom(t, j: int):
    """Generalized binomial coefficient C(t, j) = falling(t, j) / j!.

    t may be any integer or rational; j < 0 gives 0, matching the
    convention used throughout the summation formulas here (so e.g.
    C(n, -1) = 0).  Integer t >= 0 takes the fast counting path and
    returns an int; other inputs return a Rat.
    """
    if j < 0:
        return 0
    if isinstance(t, int):
        if t >= 0:
            return math.comb(t, j) if j <= t else 0
        # C(-m, j) = (-1)^j C(m+j-1, j), still an integer
        return (-1) ** j * math.comb(-t + j - 1, j)
    return mpq(falling(mpq(t), j), math.factorial(j))


def multinomial(n: int, parts) -> int:
    """Number of ways to split an n-set into blocks of the given sizes."""
    parts = list(parts)
    if n < 0:
        raise ValueError(f"multinomial: n must be nonnegative, got {n}")
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial: negative part in {parts}")
    if sum(parts) != n:
        raise ValueError(f"multinomial: parts {parts} do not sum to {n}")
    out = 1
    rest = n
    for p in parts:
        out *= math.comb(rest, p)
        rest -= p
    return out


@lru_cache(maxsize=None)
def squarefree_split(m: int) -> tuple[int, int]:
    """Return (a, b) with m = a*a*b and b squarefree, for m >= 1."""
    if m < 1:
        raise ValueError(f"squarefree_split: need m >= 1, got {m}")
    a, b, d = 1, m, 2
    while d * d <= b:
        while b % (d * d) == 0:
            a *= d
            b //= d * d
        d += 1
    return a, b


@dataclass(frozen=True)
class Surd:
    """Exact value coeff * sqrt(radicand).

    Normal form: radicand is a squarefree positive integer, and a zero
    value is stored as 0 * sqrt(1).  Two Surds are equal iff their
    normal forms match, so dataclass equality is value equality.
    """

    coeff: Rat
    radicand: int

    def __post_init__(self):
        c = mpq(self.coeff)
        r = self.radicand
        if r < 1:
            raise ValueError(f"Surd: radicand must be positive, got {r}")
        if c == 0:
            r = 1
        else:
            a, r = squarefree_split(r)
            c = c * a
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "radicand", int(r))

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_rat(self) -> Rat:
        if not self.is_rational:
            raise ValueError(f"surd {self} is irrational")
        return self.coeff

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __neg__(self) -> "Surd":
        return Surd(-self.coeff, self.radicand)

    def __add__(self, other: "Surd") -> "Surd":
        if not isinstance(other, Surd):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.radicand != other.radicand:
            raise ValueError(
                f"cannot add surds with radicands {self.radicand} and {other.radicand}"
            )
        return Surd(self.coeff + other.coeff, self.radicand)

    def __sub__(self, other: "Surd") -> "Surd":
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, Surd):
            return Surd(self.coeff * other.coeff, self.radicand * other.radicand)
        return Surd(self.coeff * mpq(other), self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if other.coeff == 0:
                raise ZeroDivisionError("surd division by zero")
            # 1/sqrt(d) = sqrt(d)/d
            return Surd(
                self.coeff / (other.coeff * other.radicand),
                self.radicand * other.radicand,
            )
        return Surd(self.coeff / mpq(other), self.radicand)

    def __str__(self) -> str:
        return f"{rat_str(self.coeff)}*sqrt({self.radicand})"


SURD_ZERO = Surd(mpq(0), 1)
SURD_ONE = Surd(mpq(1), 1)


def surd_from_rat(q) -> Surd:
    return Surd(mpq(q), 1)


def surd_sqrt_rat(q) -> Surd:
    """The principal square root of a nonnegative rational, as a Surd."""
    q = mpq(q)
    if q < 0:
        raise ValueError(f"surd_sqrt_rat: negative argument {q}")
    if q == 0:
        return SURD_ZERO
    p, d = int(q.numerator), int(q.denominator)
    return Surd(mpq(1, d), p * d)


def surd_mul(a: Surd, b: Surd) -> Surd:
    """Product of two surds, renormalized to squarefree radicand."""
    return a * b


def surd_square(a: Surd) -> Rat:
    """The square of a surd, always rational."""
    return a.coeff * a.coeff * a.radicand
