"""The hypercube sign transform decomposed over the intertwiner basis.

The 2**n by 2**n matrix with entry (-1) ** |x2 and x1| commutes with the
ground-set action, so it is a combination of the basis intertwiners.
Its coefficient over the unit-norm (tilde) element at (r1, r2, s) is a
Krawtchouk value times a binomial surd; over the plain element the surd
cancels exactly and the coefficient is rational.  This module computes
both coefficient families, assembles and verifies the decomposition
against the dense matrix and against a fast in-place transform, and
checks the per-rank block matrix of tilde coefficients: symmetric, and
squaring to 2**n times the identity block by block.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .errors import require_guard
from .exact import (
    Rat,
    Surd,
    mpq,
    surd_from_rat,
    surd_mul,
    surd_sqrt_rat,
)
from .harmonics import alpha_const, decompose, lambda_matrix
from .kernels import ParamTriple, hahn_taylor, krawtchouk, rank_cap, valid_triples
from .lattice import (
    FULL,
    Operator,
    fourier_matrix,
    identity_operator,
    intertwiner_from_kernel,
    restrict_full,
)
from .report import Report, row

FOURIER_CHECK_GUARD = 10
THEOREM5_GUARD = 8
FWHT_MAX_N = 30


def fourier_coeff_tilde(p: ParamTriple) -> Surd:
    """Coefficient of the sign transform over the tilde element at p."""
    n, r1, r2, s = p.n, p.r1, p.r2, p.s
    kr = krawtchouk(r1 - s, r2 - s, n - 2 * s)
    root = surd_sqrt_rat(
        mpq(math.comb(n - 2 * s, r2 - s), math.comb(n - 2 * s, r1 - s))
    )
    return ((-2) ** s * kr) * root


def fourier_coeff_plain(p: ParamTriple) -> Rat:
    """Coefficient over the plain element; the surd parts cancel.

    Computed as the surd product of the tilde coefficient with the
    tilde scale, so rationality is verified on every call rather than
    assumed.
    """
    prod = surd_mul(fourier_coeff_tilde(p), alpha_const(p))
    return prod.as_rat()


def fwht(vec, n: int) -> list:
    """In-place butterfly sign transform of a length 2**n integer vector.

    Returns the new list; entries are exact (Python integers grow as
    needed).  Applying it twice multiplies by 2**n.
    """
    if n < 0 or n > FWHT_MAX_N:
        raise ValueError(f"fwht: need 0 <= n <= {FWHT_MAX_N}, got {n}")
    out = [int(v) for v in vec]
    if len(out) != 1 << n:
        raise ValueError(f"fwht: vector length {len(out)} is not 2**{n}")
    h = 1
    size = len(out)
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                x, y = out[j], out[j + h]
                out[j] = x + y
                out[j + h] = x - y
        h *= 2
    return out


@dataclass(frozen=True)
class BlockMatrixK:
    """Tilde coefficients of the sign transform, one block per rank.

    Block s is indexed by levels r in s..n-s on both axes; entry
    (r1, r2) is the tilde coefficient at (n, r1, r2, s).
    """

    n: int
    blocks: Dict[int, tuple]

    def levels(self, s: int) -> range:
        return range(s, self.n - s + 1)

    def entry(self, s: int, r1: int, r2: int) -> Surd:
        lo = s
        return self.blocks[s][r1 - lo][r2 - lo]


def block_matrix(n: int) -> BlockMatrixK:
    blocks = {}
    for s in range(n // 2 + 1):
        lv = range(s, n - s + 1)
        blocks[s] = tuple(
            tuple(fourier_coeff_tilde(ParamTriple(n, r1, r2, s)) for r2 in lv)
            for r1 in lv
        )
    return BlockMatrixK(n, blocks)


def _assembled_block(n: int, r1: int, r2: int, coeff_of) -> Operator:
    """Sum of coeff(p) * basis matrix over s, as one intertwiner block."""
    sums = {}
    for k in ParamTriple(n, r1, r2, 0).window():
        total = mpq(0)
        for s in range(rank_cap(n, r1, r2) + 1):
            p = ParamTriple(n, r1, r2, s)
            total += coeff_of(p) * hahn_taylor(p, k)
        sums[k] = total
    return intertwiner_from_kernel(n, r1, r2, sums)


def check_fourier_decomposition(n: int) -> Report:
    """The sign transform equals its basis expansion, exactly.

    Per tuple: the plain coefficient is rational (surd radicand 1).
    Per level pair: the coefficient-weighted sum of basis matrices
    equals the dense block.  Globally: the dense matrix is symmetric,
    squares to 2**n times the identity, matches the butterfly transform
    on seeded random vectors, and projecting it back onto the basis
    recovers exactly the computed coefficients.
    """
    require_guard("check_fourier_decomposition", n, FOURIER_CHECK_GUARD)
    rep = Report("fourier", n)
    dense = fourier_matrix(n)
    all_blocks_ok = True
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for s in range(rank_cap(n, r1, r2) + 1):
                p = ParamTriple(n, r1, r2, s)
                prod = surd_mul(fourier_coeff_tilde(p), alpha_const(p))
                rep.checks.append(
                    row(
                        "coefficient-rational",
                        {"r1": r1, "r2": r2, "s": s},
                        prod.is_rational,
                        lhs=str(prod),
                        rhs="radicand 1",
                    )
                )
            assembled = _assembled_block(n, r1, r2, fourier_coeff_plain)
            ok = assembled == restrict_full(dense, r2, r1)
            all_blocks_ok = all_blocks_ok and ok
            rep.checks.append(row("block-assembly", {"r1": r1, "r2": r2}, ok))
    rep.checks.append(row("full-assembly", {}, all_blocks_ok))
    rep.checks.append(row("fourier-symmetric", {}, dense == dense.transpose()))
    squared = dense @ dense
    rep.checks.append(
        row(
            "fourier-involution-scaled",
            {},
            squared == identity_operator(n, FULL).scale(1 << n),
        )
    )
    rng = random.Random(2_000_003 + n)
    dim = 1 << n
    vectors = [
        [rng.randint(-999, 999) for _ in range(dim)] for _ in range(100)
    ]
    dense_num = dense.num.astype(np.int64)
    ok = True
    for v in vectors:
        fast = fwht(v, n)
        slow = dense_num @ np.array(v, dtype=np.int64)
        if fast != [int(x) for x in slow]:
            ok = False
            break
    rep.checks.append(row("fwht-matches-dense", {"vectors": 100}, ok))
    dec = decompose(dense)
    ok = all(
        dec.coefficients[p] == fourier_coeff_plain(p) for p in valid_triples(n)
    ) and set(dec.coefficients) == set(valid_triples(n))
    rep.checks.append(row("decompose-recovers-coefficients", {}, ok))
    return rep


def check_theorem5(n: int) -> Report:
    """Block structure of the transform over ranks.

    Per rank s: the block of tilde coefficients is symmetric (so the
    transposed reading of the matrix is the same matrix; recorded as a
    note) and squares to 2**n times the identity in exact surd
    arithmetic.  Per (s0, r0, r): conjugating the dense transform by
    the basis elements into and out of level s0 lands on a rational
    multiple of the diagonal element at s0, with the scalar predicted
    by the tilde coefficient; reassembling all blocks recovers the
    dense matrix.
    """
    require_guard("check_theorem5", n, THEOREM5_GUARD)
    rep = Report("theorem5", n)
    kmat = block_matrix(n)
    dense = fourier_matrix(n)
    rep.checks.append(
        row(
            "transpose-reading-note",
            {},
            True,
            lhs="coefficient blocks verified symmetric",
            rhs="matrix-of-transform and its transpose readings coincide",
        )
    )
    for s in range(n // 2 + 1):
        lv = list(kmat.levels(s))
        block = kmat.blocks[s]
        sym = all(
            block[i][j] == block[j][i]
            for i in range(len(lv))
            for j in range(len(lv))
        )
        rep.checks.append(row("k-block-symmetric", {"s": s}, sym))
        ok = True
        witness = (None, None)
        for i in range(len(lv)):
            for j in range(len(lv)):
                try:
                    acc = surd_from_rat(0)
                    for t in range(len(lv)):
                        acc = acc + surd_mul(block[i][t], block[t][j])
                except ValueError:
                    ok = False
                    witness = ("radicand clash", "")
                    break
                want = surd_from_rat(1 << n if i == j else 0)
                if acc != want:
                    ok = False
                    witness = (str(acc), str(want))
                    break
            if not ok:
                break
        rep.checks.append(
            row(
                "k-block-square",
                {"s": s},
                ok,
                lhs=witness[0],
                rhs=witness[1],
            )
        )
    for s0 in range(n // 2 + 1):
        diag = lambda_matrix(ParamTriple(n, s0, s0, s0))
        alpha_diag = alpha_const(ParamTriple(n, s0, s0, s0))
        for r0 in range(s0, n - s0 + 1):
            into = lambda_matrix(ParamTriple(n, r0, s0, s0))
            for r in range(s0, n - s0 + 1):
                outof = lambda_matrix(ParamTriple(n, s0, r, s0))
                mid = restrict_full(dense, r0, r)
                got = into @ (mid @ outof)
                numer = surd_mul(kmat.entry(s0, r, r0), alpha_diag)
                denom = surd_mul(
                    alpha_const(ParamTriple(n, r0, s0, s0)),
                    alpha_const(ParamTriple(n, s0, r, s0)),
                )
                scalar = numer / denom
                ok = scalar.is_rational and got == diag.scale(scalar.as_rat())
                rep.checks.append(
                    row(
                        "conjugation-identity",
                        {"s0": s0, "r0": r0, "r": r},
                        ok,
                        lhs=None if ok else str(scalar),
                        rhs=None if ok else "rational multiple of the diagonal element",
                    )
                )
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            def coeff_of(p: ParamTriple) -> Rat:
                return surd_mul(
                    kmat.entry(p.s, p.r1, p.r2), alpha_const(p)
                ).as_rat()

            assembled = _assembled_block(n, r1, r2, coeff_of)
            rep.checks.append(
                row(
                    "reassembly-equals-fourier",
                    {"r1": r1, "r2": r2},
                    assembled == restrict_full(dense, r2, r1),
                )
            )
    return rep
