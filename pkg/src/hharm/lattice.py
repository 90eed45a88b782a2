"""Subsets as bitmasks, and exact matrices of operators between levels.

A subset of an n-element ground set is a bitmask (an int below 2**n).
Level r is the list of masks with r bits, in increasing mask order; the
FULL space is all 2**n masks in increasing order.  An Operator stores a
dense integer matrix together with one positive denominator, so every
entry is the exact rational num[i, j] / den.  Matrix products run on
int64 arrays whenever an a priori bound rules out overflow and fall
back to Python-int object arrays otherwise, so results are exact in
both paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations
from typing import Union

import numpy as np

from .errors import GuardError, require_guard
from .exact import Rat, mpq

MAX_GROUND_SET = 20
ORBIT_ENUMERATION_GUARD = 12
FOURIER_DENSE_GUARD = 14

INT64_SAFE = 2 ** 62

Level = Union[int, str]
FULL = "full"


def level_dim(n: int, level: Level) -> int:
    if level == FULL:
        return 1 << n
    if isinstance(level, int) and 0 <= level <= n:
        return math.comb(n, level)
    raise ValueError(f"bad level tag {level!r} for n={n}")


@lru_cache(maxsize=None)
def level_elements(n: int, r: int) -> tuple:
    """All r-subsets of an n-set as bitmasks, in increasing order."""
    require_guard("level_elements", n, MAX_GROUND_SET)
    if not 0 <= r <= n:
        raise ValueError(f"level r={r} out of range for n={n}")
    masks = []
    for positions in combinations(range(n), r):
        m = 0
        for i in positions:
            m |= 1 << i
        masks.append(m)
    return tuple(sorted(masks))


@lru_cache(maxsize=None)
def _level_array(n: int, level: Level) -> np.ndarray:
    if level == FULL:
        return np.arange(1 << n, dtype=np.int64)
    return np.array(level_elements(n, level), dtype=np.int64)


@lru_cache(maxsize=None)
def _popcount_table(n: int) -> np.ndarray:
    t = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros(1 << n, dtype=np.uint8)
    for shift in range(n):
        pop += ((t >> shift) & 1).astype(np.uint8)
    return pop


def diff_size(x2: int, x1: int) -> int:
    """|x2 - x1| as sets: the number of bits of x2 not in x1."""
    return (x2 & ~x1).bit_count()


def _diff_matrix(n: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """diff_size(rows[i], cols[j]) as a uint8 matrix."""
    pop = _popcount_table(n)
    mask = (1 << n) - 1
    return pop[(rows[:, None] & ~cols[None, :]) & mask]


def orbit_count(n: int, r1: int, r2: int, k: int) -> int:
    """Count pairs (x1, x2) with |x1| = r1, |x2| = r2, |x2 - x1| = k.

    Brute-force enumeration over all pairs; guarded because the pair
    count is 4**n across a full level sweep.
    """
    require_guard("orbit_count", n, ORBIT_ENUMERATION_GUARD)
    if not (0 <= r1 <= n and 0 <= r2 <= n):
        raise ValueError(f"levels out of range: r1={r1}, r2={r2}, n={n}")
    d = _diff_matrix(n, _level_array(n, r2), _level_array(n, r1))
    return int(np.count_nonzero(d == k))


def orbit_histogram(n: int, r1: int, r2: int) -> dict:
    """k -> orbit size, by the same enumeration as orbit_count."""
    require_guard("orbit_histogram", n, ORBIT_ENUMERATION_GUARD)
    d = _diff_matrix(n, _level_array(n, r2), _level_array(n, r1))
    values, counts = np.unique(d, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max())


def _to_int64(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.int64:
        return arr
    return arr.astype(np.int64)


def _to_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product, exact regardless of magnitude."""
    inner = a.shape[1]
    bound = inner * _max_abs(a) * _max_abs(b)
    if bound < INT64_SAFE:
        return _to_int64(a) @ _to_int64(b)
    return _to_object(a) @ _to_object(b)


def exact_linear(scale_a: int, a: np.ndarray, scale_b: int, b: np.ndarray) -> np.ndarray:
    """scale_a * a + scale_b * b, exact."""
    bound = abs(scale_a) * _max_abs(a) + abs(scale_b) * _max_abs(b)
    if bound < INT64_SAFE:
        return scale_a * _to_int64(a) + scale_b * _to_int64(b)
    return int(scale_a) * _to_object(a) + int(scale_b) * _to_object(b)


def exact_scale(m: int, a: np.ndarray) -> np.ndarray:
    bound = abs(m) * _max_abs(a)
    if bound < INT64_SAFE:
        return m * _to_int64(a)
    return int(m) * _to_object(a)


def _content(arr: np.ndarray) -> int:
    if arr.dtype == object:
        return reduce(math.gcd, (int(v) for v in arr.flat), 0)
    return int(np.gcd.reduce(np.abs(arr), axis=None))


@dataclass(frozen=True, eq=False)
class Operator(object):
    """Exact linear map between level spaces, stored as num / den.

    num has one row per codomain element and one column per domain
    element, both in increasing mask order.  den > 0, and gcd of den
    with all entries is 1 whenever den > 1 (canonical form), so two
    Operators are equal iff their fields match.
    """

    n: int
    dom: Level
    cod: Level
    num: np.ndarray
    den: int = 1

    def __post_init__(self):
        expected = (level_dim(self.n, self.cod), level_dim(self.n, self.dom))
        if self.num.shape != expected:
            raise ValueError(
                f"matrix shape {self.num.shape} does not match levels {expected}"
            )
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")

    @property
    def shape(self):
        return self.num.shape

    def entry(self, i: int, j: int) -> Rat:
        return mpq(int(self.num[i, j]), self.den)

    def to_rat_rows(self):
        for i in range(self.num.shape[0]):
            yield [mpq(int(v), self.den) for v in self.num[i]]

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if self.n != other.n or self.dom != other.cod:
            raise ValueError(
                f"cannot compose {self.cod}<-{self.dom} with {other.cod}<-{other.dom}"
            )
        num = exact_matmul(self.num, other.num)
        return make_operator(self.n, other.dom, self.cod, num, self.den * other.den)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        g = math.gcd(self.den, other.den)
        lcm = self.den // g * other.den
        num = exact_linear(lcm // self.den, self.num, lcm // other.den, other.num)
        return make_operator(self.n, self.dom, self.cod, num, lcm)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        g = math.gcd(self.den, other.den)
        lcm = self.den // g * other.den
        num = exact_linear(lcm // self.den, self.num, -(lcm // other.den), other.num)
        return make_operator(self.n, self.dom, self.cod, num, lcm)

    def __neg__(self) -> "Operator":
        return make_operator(self.n, self.dom, self.cod, exact_scale(-1, self.num), self.den)

    def scale(self, q) -> "Operator":
        q = mpq(q)
        num = exact_scale(int(q.numerator), self.num)
        return make_operator(self.n, self.dom, self.cod, num, self.den * int(q.denominator))

    def transpose(self) -> "Operator":
        return make_operator(self.n, self.cod, self.dom, self.num.T.copy(), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def trace(self) -> Rat:
        if self.dom != self.cod:
            raise ValueError("trace requires a square operator on one level")
        return mpq(int(np.trace(_to_object(self.num))), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return (
            self.n == other.n
            and self.dom == other.dom
            and self.cod == other.cod
            and self.den == other.den
            and np.array_equal(self.num, other.num)
        )

    def _check_same_space(self, other: "Operator") -> None:
        if self.n != other.n or self.dom != other.dom or self.cod != other.cod:
            raise ValueError("operators act between different spaces")


def make_operator(n: int, dom: Level, cod: Level, num: np.ndarray, den: int) -> Operator:
    """Canonicalize and wrap: divide out gcd(den, all entries)."""
    den = int(den)
    if den > 1:
        g = math.gcd(_content(num), den)
        if g > 1:
            if num.dtype == object:
                num = np.array([[int(v) // g for v in row] for row in num], dtype=object)
            else:
                num = num // g
            den //= g
    if num.dtype == object and _max_abs(num) < INT64_SAFE:
        num = _to_int64(num)
    return Operator(n, dom, cod, num, den)


def zero_operator(n: int, dom: Level, cod: Level) -> Operator:
    num = np.zeros((level_dim(n, cod), level_dim(n, dom)), dtype=np.int64)
    return Operator(n, dom, cod, num, 1)


def identity_operator(n: int, level: Level) -> Operator:
    num = np.eye(level_dim(n, level), dtype=np.int64)
    return Operator(n, level, level, num, 1)


def intertwiner_from_kernel(n: int, r1: int, r2: int, kernel: dict) -> Operator:
    """Matrix with entry kernel[diff_size(x2, x1)] at row x2, column x1.

    kernel maps every k in the (r1, r2) window to an exact rational; by
    construction the matrix is constant on each orbit of pairs.
    """
    lo, hi = max(0, r2 - r1), min(n - r1, r2)
    ks = range(lo, hi + 1)
    if sorted(kernel) != list(ks):
        raise ValueError(
            f"kernel keys {sorted(kernel)} do not cover window {lo}..{hi}"
        )
    vals = {k: mpq(kernel[k]) for k in ks}
    den = 1
    for v in vals.values():
        den = den // math.gcd(den, int(v.denominator)) * int(v.denominator)
    table = np.zeros(hi + 1, dtype=np.int64)
    scaled = {k: int(v * den) for k, v in vals.items()}
    if any(abs(v) >= INT64_SAFE for v in scaled.values()):
        raise ValueError("kernel values too large for scaled integer table")
    for k, v in scaled.items():
        table[k] = v
    d = _diff_matrix(n, _level_array(n, r2), _level_array(n, r1))
    assert int(d.min()) >= lo and int(d.max()) <= hi
    return make_operator(n, r1, r2, table[d], den)


def radon_up(n: int, r1: int, r2: int) -> Operator:
    """Summation over subsets: (R f)(x2) = sum of f(x1) over x1 inside x2."""
    if not 0 <= r1 <= r2 <= n:
        raise ValueError(f"radon_up needs 0 <= r1 <= r2 <= n, got {(n, r1, r2)}")
    cols = _level_array(n, r1)
    rows = _level_array(n, r2)
    num = ((cols[None, :] & ~rows[:, None]) == 0).astype(np.int64)
    return Operator(n, r1, r2, num, 1)


def radon_down(n: int, r2: int, r1: int) -> Operator:
    """Summation over supersets: (R f)(x1) = sum of f(x2) over x2 containing x1."""
    if not 0 <= r1 <= r2 <= n:
        raise ValueError(f"radon_down needs 0 <= r1 <= r2 <= n, got {(n, r2, r1)}")
    cols = _level_array(n, r2)
    rows = _level_array(n, r1)
    num = ((rows[:, None] & ~cols[None, :]) == 0).astype(np.int64)
    return Operator(n, r2, r1, num, 1)


def complement_op(n: int, r: int) -> Operator:
    """Relabel a function on level r as a function on level n - r.

    Sends f to g with g(complement of x) = f(x); a permutation matrix.
    """
    full_mask = (1 << n) - 1
    cols = level_elements(n, r)
    rows = {m: i for i, m in enumerate(level_elements(n, n - r))}
    num = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, m in enumerate(cols):
        num[rows[full_mask ^ m], j] = 1
    return Operator(n, r, n - r, num, 1)


def laplacian_block(n: int, r: int) -> Operator:
    """Level-r block of the transposition walk generator.

    (L f)(x) = sum over transpositions g of f(gx) minus C(n, 2) f(x).
    Off-diagonal entries are 1 exactly between subsets that exchange a
    single element; each diagonal entry is the number of transpositions
    fixing x minus C(n, 2), which is -r(n - r).
    """
    masks = _level_array(n, r)
    d = _diff_matrix(n, masks, masks)
    num = (d == 1).astype(np.int64)
    np.fill_diagonal(num, -r * (n - r))
    return Operator(n, r, r, num, 1)


def fourier_matrix(n: int) -> Operator:
    """Sign matrix of the hypercube transform on the FULL space.

    Entry at row x2, column x1 is (-1) ** |x2 and x1|.  Dense and
    guarded: the matrix has 4**n entries.
    """
    require_guard("fourier_matrix", n, FOURIER_DENSE_GUARD)
    dim = 1 << n
    pop = _popcount_table(n)
    masks = np.arange(dim, dtype=np.int64)
    num = np.empty((dim, dim), dtype=np.int8)
    chunk = max(1, (1 << 22) // dim)
    for start in range(0, dim, chunk):
        rows = masks[start : start + chunk]
        par = pop[rows[:, None] & masks[None, :]] & 1
        num[start : start + chunk] = 1 - 2 * par.astype(np.int8)
    return Operator(n, FULL, FULL, num, 1)


def fourier_block(n: int, r_cod: int, r_dom: int) -> Operator:
    """Level block of the sign matrix: rows on level r_cod, columns on r_dom."""
    rows = _level_array(n, r_cod)
    cols = _level_array(n, r_dom)
    pop = _popcount_table(n)
    par = pop[rows[:, None] & cols[None, :]] & 1
    return Operator(n, r_dom, r_cod, (1 - 2 * par.astype(np.int64)), 1)


def apply_perm_to_mask(mask: int, perm) -> int:
    """Push a subset mask through a permutation of ground-set positions."""
    out = 0
    for i, target in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << target
    return out


def permutation_operator(n: int, level: Level, perm) -> Operator:
    """Permutation matrix of the ground-set action on one level (or FULL)."""
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    if level == FULL:
        cols = list(range(1 << n))
        index = {m: m for m in cols}
    else:
        cols = list(level_elements(n, level))
        index = {m: i for i, m in enumerate(cols)}
    num = np.zeros((len(cols), len(cols)), dtype=np.int64)
    for j, m in enumerate(cols):
        num[index[apply_perm_to_mask(m, perm)], j] = 1
    return Operator(n, level, level, num, 1)


def restrict_full(op: Operator, r_cod: int, r_dom: int) -> Operator:
    """Slice a FULL-space operator to the block between two levels."""
    if op.dom != FULL or op.cod != FULL:
        raise ValueError("restrict_full expects a FULL-space operator")
    rows = _level_array(op.n, r_cod)
    cols = _level_array(op.n, r_dom)
    return make_operator(op.n, r_dom, r_cod, op.num[np.ix_(rows, cols)], op.den)


def adjacent_transpositions(n: int):
    """The n - 1 generator permutations swapping positions i, i + 1."""
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        yield tuple(perm)
