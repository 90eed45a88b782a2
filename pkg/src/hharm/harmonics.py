"""The canonical basis of intertwining operators and its verified algebra.

For each valid (n, r1, r2, s) there is one basis operator from level r1
to level r2, built from the rank-s Hahn kernel.  This module constructs
the basis in three normalizations (plain, unit-norm tilde, orthonormal
bar), the isotypic projections, and the Hilbert-Schmidt pairing, and it
verifies the structural identities: composition scaling, adjoints and
complement twists, unitarity of the tilde family, the transposition
Laplacian eigenvalue equation, the spherical functional equation, and
the interaction with the summation (Radon) maps.  Each check function
sweeps every valid parameter tuple at the given ground-set size and
returns a Report of exact pass / fail rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

import numpy as np

from .errors import require_guard
from .exact import (
    Rat,
    Surd,
    falling,
    mpq,
    rat_str,
    surd_from_rat,
    surd_mul,
    surd_square,
    surd_sqrt_rat,
)
from .kernels import (
    ParamTriple,
    kernel_table,
    mu_eigenvalue,
    rank_cap,
    valid_triples,
)
from .lattice import (
    FULL,
    Operator,
    _diff_matrix,
    _level_array,
    adjacent_transpositions,
    apply_perm_to_mask,
    identity_operator,
    intertwiner_from_kernel,
    laplacian_block,
    radon_down,
    radon_up,
    complement_op,
    restrict_full,
    zero_operator,
)
from .report import Report, row

MULTIPLICATION_GUARD = 8
ADJOINT_GUARD = 10
TILDE_GUARD = 8
LAPLACIAN_GUARD = 10
SPHERICAL_GUARD = 8
RADON_GUARD = 10


def dim_isotypic(n: int, s: int) -> int:
    """Dimension C(n, s) - C(n, s - 1) of the rank-s irreducible piece."""
    return math.comb(n, s) - (math.comb(n, s - 1) if s >= 1 else 0)


@dataclass(frozen=True)
class BasisElement:
    """One basis intertwiner: an exact rational matrix and a surd scale.

    The mathematical operator is scale * matrix.  The plain element has
    scale 1 and kernel value 1 at k = 0; tilde rescales to a unitary
    map between isotypic pieces; bar additionally divides by the square
    root of the piece's dimension, making the family orthonormal in the
    Hilbert-Schmidt pairing.
    """

    params: ParamTriple
    matrix: Operator
    normalization: str
    scale: Surd


@lru_cache(maxsize=None)
def lambda_matrix(p: ParamTriple) -> Operator:
    table = kernel_table(p)
    return intertwiner_from_kernel(p.n, p.r1, p.r2, dict(table.values))


def lambda_op(p: ParamTriple) -> BasisElement:
    return BasisElement(p, lambda_matrix(p), "plain", surd_from_rat(1))


def alpha_const(p: ParamTriple) -> Surd:
    """Scale making the plain element a unitary map of isotypic pieces."""
    n, r1, r2, s = p.n, p.r1, p.r2, p.s
    base = mpq(
        falling(n - r1, s) * falling(r2, s),
        math.factorial(s) * falling(n - s + 1, s),
    )
    c1 = math.comb(n - 2 * s, r1 - s)
    c2 = math.comb(n - 2 * s, r2 - s)
    return base * surd_sqrt_rat(mpq(1, c1 * c2))


def tilde_element(p: ParamTriple) -> BasisElement:
    return BasisElement(p, lambda_matrix(p), "tilde", alpha_const(p))


def bar_element(p: ParamTriple) -> BasisElement:
    d = dim_isotypic(p.n, p.s)
    scale = surd_mul(alpha_const(p), Surd(mpq(1, d), d))
    return BasisElement(p, lambda_matrix(p), "bar", scale)


@lru_cache(maxsize=None)
def projection(n: int, r: int, s: int) -> Operator:
    """Orthogonal projection of level r onto its rank-s isotypic piece."""
    p = ParamTriple(n, r, r, s)
    return lambda_matrix(p).scale(mpq(dim_isotypic(n, s), math.comb(n, r)))


def hs_inner(a: Operator, b: Operator) -> Rat:
    """Hilbert-Schmidt pairing: the sum of entrywise products."""
    if a.n != b.n or a.dom != b.dom or a.cod != b.cod:
        raise ValueError("hs_inner requires operators between the same spaces")
    from .lattice import _max_abs, _to_int64, _to_object, INT64_SAFE

    bound = a.num.size * _max_abs(a.num) * _max_abs(b.num)
    if bound < INT64_SAFE:
        total = int(np.sum(_to_int64(a.num) * _to_int64(b.num)))
    else:
        total = int(np.sum(_to_object(a.num) * _to_object(b.num)))
    return mpq(total, a.den * b.den)


def hs_norm_expected(p: ParamTriple) -> Rat:
    """Closed form of hs_inner of a plain element with itself."""
    n, r1, r2, s = p.n, p.r1, p.r2, p.s
    coef = mpq(
        falling(r1, s) * falling(n - r2, s),
        falling(n - r1, s) * falling(r2, s),
    )
    return coef * mpq(
        math.comb(n, r1) * math.comb(n, r2), dim_isotypic(n, s)
    )


def composition_constant(n: int, r2: int, s: int) -> Rat:
    """Scalar picked up when two plain elements compose through level r2."""
    return mpq(math.comb(n, r2), dim_isotypic(n, s))


def check_multiplication(n: int) -> Report:
    """Composition table of the plain basis, and the projection family.

    Verifies, by exact dense matrix products: the rank-preserving
    composition with its scalar, vanishing of mixed-rank compositions,
    and that the rescaled diagonal elements are idempotent projections
    with trace equal to the isotypic dimension, mutually annihilating,
    and summing to the identity on each level.
    """
    require_guard("check_multiplication", n, MULTIPLICATION_GUARD)
    rep = Report("multiplication", n)
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for r3 in range(n + 1):
                caps = (rank_cap(n, r1, r2), rank_cap(n, r2, r3))
                smax = min(caps)
                for s in range(smax + 1):
                    first = lambda_matrix(ParamTriple(n, r1, r2, s))
                    second = lambda_matrix(ParamTriple(n, r2, r3, s))
                    target = lambda_matrix(ParamTriple(n, r1, r3, s))
                    got = second @ first
                    want = target.scale(composition_constant(n, r2, s))
                    rep.checks.append(
                        row(
                            "composition-scaling",
                            {"r1": r1, "r2": r2, "r3": r3, "s": s},
                            got == want,
                        )
                    )
                ok = True
                bad = None
                for s1 in range(caps[0] + 1):
                    for s2 in range(caps[1] + 1):
                        if s1 == s2:
                            continue
                        prod = lambda_matrix(
                            ParamTriple(n, r2, r3, s2)
                        ) @ lambda_matrix(ParamTriple(n, r1, r2, s1))
                        if not prod.is_zero():
                            ok = False
                            bad = (s1, s2)
                            break
                    if not ok:
                        break
                params = {"r1": r1, "r2": r2, "r3": r3}
                if bad is not None:
                    params.update({"s1": bad[0], "s2": bad[1]})
                rep.checks.append(row("cross-rank-vanishing", params, ok))
    for r in range(n + 1):
        smax = min(r, n - r)
        projs = [projection(n, r, s) for s in range(smax + 1)]
        for s, proj in enumerate(projs):
            rep.checks.append(
                row("projection-idempotent", {"r": r, "s": s}, proj @ proj == proj)
            )
            rep.checks.append(
                row(
                    "projection-trace",
                    {"r": r, "s": s},
                    proj.trace() == dim_isotypic(n, s),
                    lhs=rat_str(proj.trace()),
                    rhs=str(dim_isotypic(n, s)),
                )
            )
        ok = True
        for s1 in range(smax + 1):
            for s2 in range(s1 + 1, smax + 1):
                if not (projs[s1] @ projs[s2]).is_zero():
                    ok = False
        rep.checks.append(row("projection-orthogonal", {"r": r}, ok))
        total = projs[0]
        for proj in projs[1:]:
            total = total + proj
        rep.checks.append(
            row(
                "projection-completeness",
                {"r": r},
                total == identity_operator(n, r),
            )
        )
    return rep


def check_adjoint_complement(n: int) -> Report:
    """Transpose and complement twists of the basis, and the HS pairing.

    The transpose of an element is a closed-form rational multiple of
    the element with levels swapped; composing with complement
    relabelings on either side flips a level to its complement at the
    cost of a sign and a falling-factorial ratio; the HS norm has a
    closed form and distinct ranks are orthogonal.
    """
    require_guard("check_adjoint_complement", n, ADJOINT_GUARD)
    rep = Report("adjoint", n)
    for p in valid_triples(n):
        r1, r2, s = p.r1, p.r2, p.s
        mat = lambda_matrix(p)
        params = {"r1": r1, "r2": r2, "s": s}

        coef = mpq(
            falling(r1, s) * falling(n - r2, s),
            falling(n - r1, s) * falling(r2, s),
        )
        want = lambda_matrix(p.transposed()).scale(coef)
        rep.checks.append(
            row("adjoint-transpose-relation", params, mat.transpose() == want)
        )

        right = mat @ complement_op(n, n - r1)
        coef_r = (-1) ** s * mpq(falling(r1, s), falling(n - r1, s))
        want_r = lambda_matrix(ParamTriple(n, n - r1, r2, s)).scale(coef_r)
        rep.checks.append(row("complement-right-compose", params, right == want_r))

        left = complement_op(n, r2) @ mat
        coef_l = (-1) ** s * mpq(falling(n - r2, s), falling(r2, s))
        want_l = lambda_matrix(ParamTriple(n, r1, n - r2, s)).scale(coef_l)
        rep.checks.append(row("complement-left-compose", params, left == want_l))

        norm = hs_inner(mat, mat)
        rep.checks.append(
            row(
                "hs-norm",
                params,
                norm == hs_norm_expected(p),
                lhs=rat_str(norm),
                rhs=rat_str(hs_norm_expected(p)),
            )
        )
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            cap = rank_cap(n, r1, r2)
            ok = True
            bad = None
            for s1 in range(cap + 1):
                for s2 in range(s1 + 1, cap + 1):
                    inner = hs_inner(
                        lambda_matrix(ParamTriple(n, r1, r2, s1)),
                        lambda_matrix(ParamTriple(n, r1, r2, s2)),
                    )
                    if inner != 0:
                        ok = False
                        bad = (s1, s2, inner)
            params = {"r1": r1, "r2": r2}
            if bad is not None:
                params.update({"s1": bad[0], "s2": bad[1]})
            rep.checks.append(
                row(
                    "hs-orthogonality",
                    params,
                    ok,
                    lhs=None if ok else rat_str(bad[2]),
                    rhs=None if ok else "0",
                )
            )
    return rep


def check_tilde_relations(n: int) -> Report:
    """Unitary normalization: scales tracked as surds, matrices rational.

    The tilde element is alpha * matrix with alpha a surd; all stated
    relations pair surds of equal radicand, so each check reduces to a
    rational scalar times an exact matrix identity.  The composition
    target verified here is the element between the outer levels (the
    inner level drops out); the printed source this follows carries a
    typo repeating the inner pair, recorded as an informational row.
    """
    require_guard("check_tilde_relations", n, TILDE_GUARD)
    rep = Report("tilde", n)
    rep.checks.append(
        row(
            "composition-target-note",
            {},
            True,
            lhs="verified target: levels (r1, r3), both for tilde and bar",
            rhs="printed form repeats (r1, r2); rejected as a typo",
        )
    )
    for p in valid_triples(n):
        r1, r2, s = p.r1, p.r2, p.s
        params = {"r1": r1, "r2": r2, "s": s}
        mat = lambda_matrix(p)
        alpha = alpha_const(p)

        gram = mat.transpose() @ mat
        rep.checks.append(
            row(
                "tilde-unitary",
                params,
                gram.scale(surd_square(alpha)) == projection(n, p.r1, s),
            )
        )

        alpha_t = alpha_const(p.transposed())
        ratio = alpha_t / alpha
        ok = ratio.is_rational and mat.transpose() == lambda_matrix(
            p.transposed()
        ).scale(ratio.as_rat())
        rep.checks.append(row("tilde-adjoint", params, ok))

        if r1 == r2:
            ok = alpha.is_rational and alpha.as_rat() == mpq(
                dim_isotypic(n, s), math.comb(n, r1)
            )
            rep.checks.append(
                row(
                    "alpha-projection-scalar",
                    {"r": r1, "s": s},
                    ok,
                    lhs=str(alpha),
                    rhs=rat_str(mpq(dim_isotypic(n, s), math.comb(n, r1))),
                )
            )
            rep.checks.append(
                row(
                    "tilde-projection-identity",
                    {"r": r1, "s": s},
                    alpha.is_rational
                    and mat.scale(alpha.as_rat()) == projection(n, r1, s),
                )
            )
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for r3 in range(n + 1):
                smax = min(rank_cap(n, r1, r2), rank_cap(n, r2, r3))
                for s in range(smax + 1):
                    p12 = ParamTriple(n, r1, r2, s)
                    p23 = ParamTriple(n, r2, r3, s)
                    p13 = ParamTriple(n, r1, r3, s)
                    params = {"r1": r1, "r2": r2, "r3": r3, "s": s}
                    ratio = alpha_const(p13) / surd_mul(
                        alpha_const(p12), alpha_const(p23)
                    )
                    got = lambda_matrix(p23) @ lambda_matrix(p12)
                    ok = ratio.is_rational and got == lambda_matrix(p13).scale(
                        ratio.as_rat()
                    )
                    rep.checks.append(row("tilde-composition", params, ok))

                    d = dim_isotypic(n, s)
                    beta = Surd(mpq(1, d), d)
                    lhs = surd_mul(
                        surd_mul(bar_element(p12).scale, bar_element(p23).scale),
                        surd_from_rat(composition_constant(n, r2, s)),
                    )
                    rhs = surd_mul(beta, bar_element(p13).scale)
                    rep.checks.append(
                        row(
                            "bar-composition-scalar",
                            params,
                            lhs == rhs,
                            lhs=str(lhs),
                            rhs=str(rhs),
                        )
                    )
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            cap = rank_cap(n, r1, r2)
            ok = True
            for s1 in range(cap + 1):
                for s2 in range(cap + 1):
                    e1 = bar_element(ParamTriple(n, r1, r2, s1))
                    e2 = bar_element(ParamTriple(n, r1, r2, s2))
                    inner = hs_inner(e1.matrix, e2.matrix)
                    if s1 != s2:
                        if inner != 0:
                            ok = False
                    else:
                        if surd_square(e1.scale) * inner != 1:
                            ok = False
            rep.checks.append(row("bar-orthonormal", {"r1": r1, "r2": r2}, ok))
    return rep


def check_laplacian(n: int) -> Report:
    """Transposition walk generator against the basis and projections.

    Every basis element into level r2 is an eigenvector of the level-r2
    block with eigenvalue -s(n - s + 1), and the block equals the sum
    of its eigenvalues times the isotypic projections.
    """
    require_guard("check_laplacian", n, LAPLACIAN_GUARD)
    rep = Report("laplacian", n)
    blocks = {r: laplacian_block(n, r) for r in range(n + 1)}
    for p in valid_triples(n):
        mat = lambda_matrix(p)
        mu = mu_eigenvalue(n, p.s)
        got = blocks[p.r2] @ mat + mat.scale(mu)
        rep.checks.append(
            row(
                "laplacian-eigenvector",
                {"r1": p.r1, "r2": p.r2, "s": p.s},
                got.is_zero(),
            )
        )
    for r in range(n + 1):
        smax = min(r, n - r)
        total = zero_operator(n, r, r)
        for s in range(smax + 1):
            total = total + projection(n, r, s).scale(-mu_eigenvalue(n, s))
        rep.checks.append(
            row("laplacian-spectral-resolution", {"r": r}, total == blocks[r])
        )
    return rep


def check_spherical(n: int, r: int, s: int) -> Report:
    """Functional equation of one zonal kernel on level r.

    For each base point x0, averaging the kernel over the set of y at
    fixed difference a from x0 factorizes: the average of
    lambda(|y - x2|) over {y : |y - x0| = a} equals
    lambda(a) * lambda(|x0 - x2|) for every x2.  Checked exhaustively
    over all base points, all differences a, and all x2.
    """
    require_guard("check_spherical", n, SPHERICAL_GUARD)
    p = ParamTriple(n, r, r, s)
    rep = Report("spherical", n)
    table = kernel_table(p)
    rep.checks.append(
        row(
            "spherical-normalization",
            {"r": r, "s": s},
            table.values[0] == 1,
            lhs=rat_str(table.values[0]),
            rhs="1",
        )
    )
    den = 1
    for v in table.values.values():
        den = den // math.gcd(den, int(v.denominator)) * int(v.denominator)
    tab = np.array(
        [int(table.values[k] * den) for k in range(p.k_max + 1)], dtype=np.int64
    )
    masks = _level_array(n, r)
    d = _diff_matrix(n, masks, masks).astype(np.int64)
    scaled = tab[d]
    ok = True
    witness = None
    for i0 in range(len(masks)):
        to_base = d[:, i0]
        base_row = tab[d[i0, :]]
        for a in range(p.k_max + 1):
            group = np.nonzero(to_base == a)[0]
            count = len(group)
            if count == 0:
                ok = False
                witness = (i0, a, "empty orbit", "")
                break
            lhs_vec = scaled[group, :].sum(axis=0, dtype=np.int64) * den
            rhs_vec = count * int(tab[a]) * base_row
            if not np.array_equal(lhs_vec, rhs_vec):
                j = int(np.nonzero(lhs_vec != rhs_vec)[0][0])
                witness = (
                    i0,
                    a,
                    rat_str(mpq(int(lhs_vec[j]), count * den * den)),
                    rat_str(mpq(int(rhs_vec[j]), count * den * den)),
                )
                ok = False
                break
        if not ok:
            break
    params = {"r": r, "s": s}
    if witness is not None:
        params.update({"x0_index": witness[0], "a": witness[1]})
        rep.checks.append(
            row("spherical-functional-equation", params, False, witness[2], witness[3])
        )
    else:
        rep.checks.append(row("spherical-functional-equation", params, True))
    return rep


def check_radon_annihilation(n: int) -> Report:
    """Summation maps against the basis.

    Down-summation from level s to s - 1 kills every rank-s element
    into level s; up-summation from level s to r2 carries the rank-s
    element into level s to C(r2, s) times the one into level r2.  The
    proportionality constant is recovered from the matrices and
    reported next to its closed form.
    """
    require_guard("check_radon_annihilation", n, RADON_GUARD)
    rep = Report("radon", n)
    for r1 in range(n + 1):
        for r2 in range(r1, n + 1):
            got = radon_down(n, r2, r1)
            want = radon_up(n, r1, r2).transpose()
            rep.checks.append(
                row("radon-adjoint-transpose", {"r1": r1, "r2": r2}, got == want)
            )
    for p in valid_triples(n):
        if p.r2 == p.s and p.s >= 1:
            prod = radon_down(n, p.s, p.s - 1) @ lambda_matrix(p)
            rep.checks.append(
                row(
                    "radon-annihilation",
                    {"r": p.r1, "s": p.s},
                    prod.is_zero(),
                )
            )
    for p in valid_triples(n):
        r1, r2, s = p.r1, p.r2, p.s
        if r2 < s:
            continue
        into_s = lambda_matrix(ParamTriple(n, r1, s, s))
        got = radon_up(n, s, r2) @ into_s
        target = lambda_matrix(p)
        expected = math.comb(r2, s)
        recovered = _proportionality(got, target)
        ok = recovered is not None and recovered == expected and got == target.scale(
            expected
        )
        rep.checks.append(
            row(
                "radon-scaling-constant",
                {"r1": r1, "r2": r2, "s": s},
                ok,
                lhs="none" if recovered is None else rat_str(recovered),
                rhs=str(expected),
            )
        )
    return rep


def _proportionality(got: Operator, target: Operator):
    """Ratio got / target read off at the first nonzero target entry."""
    idx = np.nonzero(target.num)
    if len(idx[0]) == 0:
        return None
    i, j = int(idx[0][0]), int(idx[1][0])
    return got.entry(i, j) / target.entry(i, j)


@dataclass(frozen=True)
class Decomposition:
    """Coefficients of an equivariant operator over the canonical basis."""

    n: int
    basis: str
    coefficients: Dict[ParamTriple, Rat]

    def reconstruct(self, dom, cod) -> Operator:
        """Re-sum the coefficients into the block between two levels."""
        total = zero_operator(self.n, dom, cod)
        for p, c in self.coefficients.items():
            if p.r1 == dom and p.r2 == cod and c != 0:
                total = total + lambda_matrix(p).scale(c)
        return total

    def to_tilde(self) -> Dict[ParamTriple, Surd]:
        return {
            p: surd_from_rat(c) / alpha_const(p)
            for p, c in self.coefficients.items()
        }


def decompose(op: Operator) -> Decomposition:
    """Exact coefficients of an equivariant operator in the basis.

    Validates equivariance against all adjacent-transposition generator
    permutations first, then projects each level block onto the basis
    with the HS pairing and verifies the residual is exactly zero.
    Raises ValueError for an operator that fails either test.
    """
    n = op.n
    for perm in adjacent_transpositions(n):
        if not _commutes_with_perm(op, perm):
            raise ValueError(f"operator does not commute with transposition {perm}")
    if op.dom == FULL:
        if op.cod != FULL:
            raise ValueError("mixed FULL / level operators are not supported")
        pairs = [(r1, r2) for r1 in range(n + 1) for r2 in range(n + 1)]
        blocks = {pair: restrict_full(op, pair[1], pair[0]) for pair in pairs}
    else:
        if op.cod == FULL:
            raise ValueError("mixed FULL / level operators are not supported")
        pairs = [(op.dom, op.cod)]
        blocks = {(op.dom, op.cod): op}
    coeffs: Dict[ParamTriple, Rat] = {}
    for (r1, r2), block in blocks.items():
        residual = block
        for s in range(rank_cap(n, r1, r2) + 1):
            p = ParamTriple(n, r1, r2, s)
            basis_mat = lambda_matrix(p)
            c = hs_inner(block, basis_mat) / hs_inner(basis_mat, basis_mat)
            coeffs[p] = c
            if c != 0:
                residual = residual - basis_mat.scale(c)
        if not residual.is_zero():
            raise ValueError(
                f"block ({r1}, {r2}) is not in the span of the basis"
            )
    return Decomposition(n, "plain", coeffs)


def _perm_index(n: int, level, perm) -> np.ndarray:
    """Index array sending position i to the position of the permuted mask."""
    masks = _level_array(n, level)
    if level == FULL:
        lookup = None
    else:
        lookup = {int(m): i for i, m in enumerate(masks)}
    out = np.empty(len(masks), dtype=np.int64)
    for i, m in enumerate(masks):
        moved = apply_perm_to_mask(int(m), perm)
        out[i] = moved if lookup is None else lookup[moved]
    return out


def _commutes_with_perm(op: Operator, perm) -> bool:
    """T(gx2, gx1) == T(x2, x1) for all pairs, by pure reindexing.

    Equivalent to P_g T == T P_g with permutation matrices, but costs a
    matrix reindex instead of two dense products.
    """
    gi = _perm_index(op.n, op.cod, perm)
    gj = _perm_index(op.n, op.dom, perm)
    return np.array_equal(op.num[np.ix_(gi, gj)], op.num)
