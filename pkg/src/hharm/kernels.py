"""Hahn kernels of the subset intertwining operators, and their identities.

The symmetric group of an n-set acts on the power set; the pairs
(x1, x2) of an r1-subset and an r2-subset split into orbits indexed by
k = |x2 - x1|, which runs over the window

    max(0, r2 - r1) <= k <= min(n - r1, r2).

An operator from functions on level r1 to functions on level r2 that
commutes with the action is determined by one value per orbit.  The
canonical basis of such operators is indexed by a rank s with
0 <= s <= min(r1, n - r1, r2, n - r2), and its member of rank s has
kernel values lambda(k) given by a polynomial of degree s in k, a Hahn
polynomial in disguise.  This module evaluates that polynomial by four
independent routes and exposes the scalar identities it satisfies:
the second-order difference equation, the one-step difference
recurrence, the Rodrigues form against the orbit-size weight, and the
weight's own shift identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from .exact import Rat, binom, falling, mpq, rising


@dataclass(frozen=True)
class ParamTriple:
    """Valid index (n, r1, r2, s) of a basis intertwiner.

    r1 is the source level, r2 the target level, s the rank.  The rank
    cap min(r1, n-r1, r2, n-r2) is the number of irreducible pieces
    shared by the two levels minus one.
    """

    n: int
    r1: int
    r2: int
    s: int

    def __post_init__(self):
        n, r1, r2, s = self.n, self.r1, self.r2, self.s
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        if not (0 <= r1 <= n and 0 <= r2 <= n):
            raise ValueError(f"levels out of range: r1={r1}, r2={r2}, n={n}")
        cap = min(r1, n - r1, r2, n - r2)
        if not (0 <= s <= cap):
            raise ValueError(
                f"rank s={s} outside 0..{cap} for (n={n}, r1={r1}, r2={r2})"
            )

    @property
    def rank_cap(self) -> int:
        return min(self.r1, self.n - self.r1, self.r2, self.n - self.r2)

    @property
    def k_min(self) -> int:
        return max(0, self.r2 - self.r1)

    @property
    def k_max(self) -> int:
        return min(self.n - self.r1, self.r2)

    def window(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def transposed(self) -> "ParamTriple":
        return ParamTriple(self.n, self.r2, self.r1, self.s)


def rank_cap(n: int, r1: int, r2: int) -> int:
    return min(r1, n - r1, r2, n - r2)


def valid_triples(n: int):
    """All valid ParamTriples for a ground set of size n, sorted."""
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for s in range(rank_cap(n, r1, r2) + 1):
                yield ParamTriple(n, r1, r2, s)


def hahn_taylor(p: ParamTriple, t) -> Rat:
    """Kernel value at t from the expansion in binomials C(t, j).

    Works at any rational t; the result is the degree-s polynomial
    normalized to value 1 at t = 0.
    """
    acc = mpq(0)
    for j in range(p.s + 1):
        term = mpq(
            falling(p.s, j) * falling(p.n - p.s + 1, j),
            falling(p.n - p.r1, j) * falling(p.r2, j),
        )
        acc += (-1) ** j * binom(_q(t), j) * term
    return acc


def hahn_radon(p: ParamTriple, t) -> Rat:
    """Kernel value at t via averaging over intermediate s-subsets.

    Composing the rank-s operator into level s with the summation map
    from level s to level r2 reproduces the rank-s operator into level
    r2 up to the constant C(r2, s); solving the one-dimensional case in
    closed form gives this expression.  Normalized to value 1 at t = 0.
    """
    t = _q(t)
    acc = mpq(0)
    for j in range(p.s + 1):
        ratio = (-1) ** j * mpq(
            rising(p.r1 - p.s + 1, j), falling(p.n - p.r1, j)
        )
        acc += binom(t, j) * binom(p.r2 - t, p.s - j) * ratio
    return acc / math.comb(p.r2, p.s)


def hahn_rodrigues(p: ParamTriple, t) -> Rat:
    """Kernel value at t from the expanded Rodrigues-type sum."""
    t = _q(t)
    acc = mpq(0)
    for j in range(p.s + 1):
        acc += (
            (-1) ** j
            * math.comb(p.s, j)
            * falling(t, j)
            * falling(p.r2 - t, p.s - j)
            * falling(p.r1 - p.r2 + t, j)
            * falling(p.n - p.r1 - t, p.s - j)
        )
    return acc / (falling(p.n - p.r1, p.s) * falling(p.r2, p.s))


def hahn_classical(p: ParamTriple, k: int, variant="first") -> Rat:
    """Kernel value at an integer window point, in dual Hahn form.

    variant is "first" or "second" (the integers 1 and 2 are accepted
    as aliases).  The two variants exchange the roles of the levels and
    of their complements; both only make sense on the window, where the
    counting binomials in the denominator are nonzero.
    """
    if k not in p.window():
        raise ValueError(f"k={k} outside window {p.k_min}..{p.k_max}")
    n, r1, r2, s = p.n, p.r1, p.r2, p.s
    if variant in (1, "first"):
        acc = 0
        for j in range(s + 1):
            acc += (
                (-1) ** j
                * math.comb(s, j)
                * binom(r1 - s, r1 - r2 + k - j)
                * binom(n - r1 - s, k - j)
            )
        return mpq(falling(r1, s) * acc, falling(r2, s)) / (
            binom(r1, r1 - r2 + k) * binom(n - r1, k)
        )
    if variant in (2, "second"):
        acc = 0
        for j in range(s + 1):
            acc += (
                (-1) ** j
                * math.comb(s, j)
                * binom(r2 - s, k - j)
                * binom(n - r2 - s, r1 - r2 + k - j)
            )
        return mpq(falling(n - r2, s) * acc, falling(n - r1, s)) / (
            binom(r2, k) * binom(n - r2, r1 - r2 + k)
        )
    raise ValueError(f"variant must be 'first' or 'second', got {variant!r}")


def hahn_delta(p: ParamTriple, t) -> Rat:
    """Forward difference lambda(t+1) - lambda(t), in closed form.

    The difference of the rank-s kernel is a multiple of the rank-(s-1)
    kernel on the contracted parameter set (n-2, r1-1, r2-1).
    """
    if p.s == 0:
        return mpq(0)
    inner = ParamTriple(p.n - 2, p.r1 - 1, p.r2 - 1, p.s - 1)
    coeff = -mpq(p.s * (p.n - p.s + 1), p.r2 * (p.n - p.r1))
    return coeff * hahn_taylor(inner, t)


def hahn_leading(p: ParamTriple) -> Rat:
    """Coefficient of t^s in the kernel polynomial."""
    return (-1) ** p.s * mpq(
        falling(p.n - p.s + 1, p.s),
        falling(p.n - p.r1, p.s) * falling(p.r2, p.s),
    )


def hahn_endpoint(p: ParamTriple) -> Rat:
    """Kernel value at t = r2, in closed form."""
    return (-1) ** p.s * mpq(falling(p.r1, p.s), falling(p.n - p.r1, p.s))


@dataclass(frozen=True)
class KernelTable:
    """Window values of one kernel: k -> lambda(k) for k_min <= k <= k_max."""

    params: ParamTriple
    k_min: int
    k_max: int
    values: Dict[int, Rat]

    def __post_init__(self):
        assert sorted(self.values) == list(range(self.k_min, self.k_max + 1))

    def rows(self):
        for k in range(self.k_min, self.k_max + 1):
            yield k, self.values[k]


def kernel_table(p: ParamTriple) -> KernelTable:
    vals = {k: hahn_taylor(p, k) for k in p.window()}
    return KernelTable(p, p.k_min, p.k_max, vals)


def sigma_poly(p: ParamTriple, t):
    """Second-order coefficient t (r1 - r2 + t) of the difference equation."""
    t = _q(t)
    return t * (p.r1 - p.r2 + t)


def tau_poly(p: ParamTriple, t):
    """First-order coefficient r2 (n - r1) - n t of the difference equation."""
    return p.r2 * (p.n - p.r1) - p.n * _q(t)


def mu_eigenvalue(n: int, s: int) -> int:
    """Eigenvalue s (n - s + 1) attached to rank s."""
    return s * (n - s + 1)


def hypergeometric_residual(p: ParamTriple, t) -> Rat:
    """sigma(t) (D del h)(t) + tau(t) (D h)(t) + mu h(t) for the kernel h.

    D is the forward and del the backward unit difference.  The residual
    vanishes identically in t; evaluating at rational t checks the
    polynomial identity rather than a finite sample of lattice points.
    """
    t = _q(t)
    h_prev = hahn_taylor(p, t - 1)
    h_here = hahn_taylor(p, t)
    h_next = hahn_taylor(p, t + 1)
    second = h_next - 2 * h_here + h_prev
    first = h_next - h_here
    return (
        sigma_poly(p, t) * second
        + tau_poly(p, t) * first
        + mu_eigenvalue(p.n, p.s) * h_here
    )


def weight(n: int, r1: int, r2: int, k: int) -> int:
    """Size of the orbit of subset pairs with |x2 - x1| = k.

    Counts pairs (x1, x2) with |x1| = r1, |x2| = r2 inside an n-set.
    Returns 0 outside the window (and for senseless level values), so
    it is total in k.
    """
    parts = (k, r2 - k, r1 - r2 + k, n - r1 - k)
    if n < 0 or any(q < 0 for q in parts):
        return 0
    out = 1
    rest = n
    for q in parts:
        out *= math.comb(rest, q)
        rest -= q
    return out


def weight_delta_pair(n: int, r1: int, r2: int, t: int):
    """Forward-difference identity of the weight: D(w sigma) = w tau.

    Returns (lhs, rhs) at integer t; they agree at every lattice point,
    including both window boundaries.
    """
    p0 = ParamTriple(n, r1, r2, 0)
    lhs = weight(n, r1, r2, t + 1) * sigma_poly(p0, t + 1) - weight(
        n, r1, r2, t
    ) * sigma_poly(p0, t)
    rhs = weight(n, r1, r2, t) * tau_poly(p0, t)
    return lhs, rhs


def weight_descent_pair(n: int, r1: int, r2: int, t: int):
    """Contraction identity of the weight: w(t+1) sigma(t+1) against n-2.

    Returns (lhs, rhs) where lhs = w(t+1) sigma(t+1) on (n, r1, r2) and
    rhs = n (n-1) w(t) on the contracted parameters (n-2, r1-1, r2-1).
    """
    p0 = ParamTriple(n, r1, r2, 0)
    lhs = weight(n, r1, r2, t + 1) * sigma_poly(p0, t + 1)
    rhs = n * (n - 1) * weight(n - 2, r1 - 1, r2 - 1, t)
    return lhs, rhs


def backward_difference_power(f, s: int, t: int):
    """(del^s f)(t) = sum_j (-1)^j C(s, j) f(t - j)."""
    acc = 0
    for j in range(s + 1):
        acc += (-1) ** j * math.comb(s, j) * f(t - j)
    return acc


def rodrigues_check(p: ParamTriple, t: int):
    """Both sides of the Rodrigues formula at an integer point.

    lhs = w(t) lambda(t); rhs applies the s-th backward difference to
    the contracted weight on (n - 2s, r1 - s, r2 - s), scaled by
    falling(n, 2s) / (falling(n-r1, s) falling(r2, s)).
    """
    n, r1, r2, s = p.n, p.r1, p.r2, p.s
    lhs = weight(n, r1, r2, t) * hahn_taylor(p, t)
    scale = mpq(falling(n, 2 * s), falling(n - r1, s) * falling(r2, s))
    rhs = scale * backward_difference_power(
        lambda u: weight(n - 2 * s, r1 - s, r2 - s, u), s, t
    )
    return lhs, rhs


def krawtchouk(m: int, k: int, n: int) -> int:
    """Krawtchouk polynomial value P_m(k) on the n-cube.

    P_m(k) = sum_j (-1)^j C(k, j) C(n-k, m-j); the value at k counts
    signed m-subsets against a fixed k-subset of coordinates.
    """
    if not (0 <= m <= n and 0 <= k <= n):
        raise ValueError(f"krawtchouk: need 0 <= m, k <= n, got m={m} k={k} n={n}")
    acc = 0
    for j in range(m + 1):
        acc += (-1) ** j * binom(k, j) * binom(n - k, m - j)
    return acc


def _q(t) -> Rat:
    return mpq(t)
