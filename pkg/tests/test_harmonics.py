import math
import random
from fractions import Fraction

import numpy as np
import pytest

from hharm.errors import GuardError
from hharm.exact import rat, surd_from_rat, surd_mul, surd_sqrt_rat, surd_square
from hharm.harmonics import (
    Decomposition,
    alpha_const,
    bar_element,
    check_adjoint_complement,
    check_laplacian,
    check_multiplication,
    check_radon_annihilation,
    check_spherical,
    check_tilde_relations,
    composition_constant,
    decompose,
    dim_isotypic,
    hs_inner,
    hs_norm_expected,
    lambda_matrix,
    lambda_op,
    projection,
    tilde_element,
)
from hharm.kernels import ParamTriple, hahn_taylor, valid_triples, weight
from hharm.lattice import (
    FULL,
    diff_size,
    fourier_matrix,
    identity_operator,
    laplacian_block,
    level_elements,
    make_operator,
    permutation_operator,
    radon_down,
    restrict_full,
    zero_operator,
)


def test_dim_isotypic_values():
    assert [dim_isotypic(4, s) for s in range(3)] == [1, 3, 2]
    assert dim_isotypic(6, 3) == 5
    for n in range(9):
        for r in range(n + 1):
            assert sum(
                dim_isotypic(n, s) for s in range(min(r, n - r) + 1)
            ) == math.comb(n, r)


def test_rank_zero_matrix_is_all_ones():
    for n in range(6):
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                mat = lambda_matrix(ParamTriple(n, r1, r2, 0))
                assert mat.den == 1
                assert np.all(mat.num == 1)


def test_equal_level_matrix_has_unit_diagonal():
    for n in range(6):
        for r in range(n + 1):
            for s in range(min(r, n - r) + 1):
                mat = lambda_matrix(ParamTriple(n, r, r, s))
                for i in range(mat.shape[0]):
                    assert mat.entry(i, i) == 1


def test_basis_element_fields():
    p = ParamTriple(4, 2, 2, 1)
    plain = lambda_op(p)
    assert plain.normalization == "plain"
    assert plain.scale == surd_from_rat(1)
    assert plain.matrix == lambda_matrix(p)
    assert tilde_element(p).normalization == "tilde"
    assert tilde_element(p).scale == alpha_const(p)
    bar = bar_element(p)
    assert bar.normalization == "bar"
    d = dim_isotypic(4, 1)
    assert bar.scale == surd_mul(alpha_const(p), surd_sqrt_rat(rat(1, d)))


def test_alpha_rank_zero_closed_form():
    for n in range(7):
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                a = alpha_const(ParamTriple(n, r1, r2, 0))
                assert a == surd_sqrt_rat(
                    rat(1, math.comb(n, r1) * math.comb(n, r2))
                )


def test_alpha_small_value():
    assert alpha_const(ParamTriple(2, 1, 1, 1)) == surd_from_rat(rat(1, 2))
    # [3]_1 [2]_1 / (sqrt(C(2,0) C(2,1)) 1! [4]_1) = 6 / (4 sqrt(2))
    assert alpha_const(ParamTriple(4, 1, 2, 1)) == surd_mul(
        surd_from_rat(rat(3, 2)), surd_sqrt_rat(rat(1, 2))
    )


def test_alpha_equal_levels_is_dimension_ratio():
    for n in range(7):
        for r in range(n + 1):
            for s in range(min(r, n - r) + 1):
                a = alpha_const(ParamTriple(n, r, r, s))
                assert a.is_rational
                assert a.as_rat() == rat(dim_isotypic(n, s), math.comb(n, r))


def test_projection_family():
    for n in range(6):
        for r in range(n + 1):
            smax = min(r, n - r)
            projs = [projection(n, r, s) for s in range(smax + 1)]
            total = zero_operator(n, r, r)
            for s, proj in enumerate(projs):
                assert proj @ proj == proj
                assert np.array_equal(proj.num, proj.num.T)
                assert proj.trace() == dim_isotypic(n, s)
                total = total + proj
            assert total == identity_operator(n, r)
            for s1 in range(smax + 1):
                for s2 in range(smax + 1):
                    if s1 != s2:
                        assert (projs[s1] @ projs[s2]).is_zero()


def test_projection_rank_zero_is_averaging():
    proj = projection(5, 2, 0)
    assert np.all(proj.num == 1)
    assert proj.den == 10
    assert proj.entry(3, 7) == rat(1, 10)


def test_hs_inner_small_value():
    p = ParamTriple(4, 2, 2, 1)
    mat = lambda_matrix(p)
    assert hs_inner(mat, mat) == 12
    assert hs_norm_expected(p) == 12


def test_hs_inner_matches_orbit_sum():
    # the matrix is constant on orbits, so the entrywise square sums to
    # sum over k of (orbit size) * lambda(k)^2
    for n in range(7):
        for p in valid_triples(n):
            mat = lambda_matrix(p)
            expected = sum(
                weight(n, p.r1, p.r2, k) * hahn_taylor(p, k) ** 2
                for k in p.window()
            )
            assert hs_inner(mat, mat) == expected
            assert hs_norm_expected(p) == expected


def test_hs_inner_rejects_space_mismatch():
    with pytest.raises(ValueError):
        hs_inner(identity_operator(3, 1), identity_operator(3, 2))


def test_hs_orthogonality_distinct_ranks():
    for n in range(7):
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                cap = min(r1, n - r1, r2, n - r2)
                mats = [
                    lambda_matrix(ParamTriple(n, r1, r2, s))
                    for s in range(cap + 1)
                ]
                for s1 in range(cap + 1):
                    for s2 in range(s1 + 1, cap + 1):
                        assert hs_inner(mats[s1], mats[s2]) == 0


def test_composition_small_case():
    # n = 4: going 2 -> 1 -> 2 at rank 1 scales the 2 -> 2 element by 4/3
    down = lambda_matrix(ParamTriple(4, 2, 1, 1))
    up = lambda_matrix(ParamTriple(4, 1, 2, 1))
    target = lambda_matrix(ParamTriple(4, 2, 2, 1))
    assert composition_constant(4, 1, 1) == rat(4, 3)
    assert up @ down == target.scale(rat(4, 3))


def test_cross_rank_composition_vanishes():
    a = lambda_matrix(ParamTriple(4, 2, 2, 1))
    b = lambda_matrix(ParamTriple(4, 2, 2, 2))
    assert (a @ b).is_zero()
    assert (b @ a).is_zero()


def test_radon_annihilation_small_case():
    prod = radon_down(4, 1, 0) @ lambda_matrix(ParamTriple(4, 2, 1, 1))
    assert prod.is_zero()


def test_check_functions_pass_small():
    for n in range(6):
        for rep in (
            check_multiplication(n),
            check_adjoint_complement(n),
            check_tilde_relations(n),
            check_laplacian(n),
            check_radon_annihilation(n),
        ):
            assert rep.passed, rep.failures
            assert rep.n == n
            assert len(rep.checks) > 0


def test_check_spherical_passes_small():
    for n in range(6):
        for r in range(n + 1):
            for s in range(min(r, n - r) + 1):
                rep = check_spherical(n, r, s)
                assert rep.passed, rep.failures


def test_check_guards():
    with pytest.raises(GuardError):
        check_multiplication(9)
    with pytest.raises(GuardError):
        check_adjoint_complement(11)
    with pytest.raises(GuardError):
        check_tilde_relations(9)
    with pytest.raises(GuardError):
        check_laplacian(11)
    with pytest.raises(GuardError):
        check_spherical(9, 1, 1)
    with pytest.raises(GuardError):
        check_radon_annihilation(11)


def brute_spherical(n, r, s):
    """Functional equation checked with Fraction arithmetic over raw subsets."""
    p = ParamTriple(n, r, r, s)
    lam = {}
    for k in p.window():
        v = hahn_taylor(p, k)
        lam[k] = Fraction(int(v.numerator), int(v.denominator))
    elems = level_elements(n, r)
    for x0 in elems:
        for a in p.window():
            sphere = [y for y in elems if diff_size(y, x0) == a]
            if not sphere:
                return False
            for x2 in elems:
                total = sum(lam[diff_size(y, x2)] for y in sphere)
                if total != len(sphere) * lam[a] * lam[diff_size(x0, x2)]:
                    return False
    return True


def test_spherical_brute_force_agreement():
    for n in range(5):
        for r in range(n + 1):
            for s in range(min(r, n - r) + 1):
                assert brute_spherical(n, r, s)


def test_laplacian_eigenvector_small_case():
    mat = lambda_matrix(ParamTriple(4, 2, 2, 1))
    block = laplacian_block(4, 2)
    assert block @ mat == mat.scale(-4)


def test_decompose_identity():
    for n in range(5):
        for r in range(n + 1):
            dec = decompose(identity_operator(n, r))
            assert dec.basis == "plain"
            for p, c in dec.coefficients.items():
                assert c == rat(dim_isotypic(n, p.s), math.comb(n, r))
            assert dec.reconstruct(r, r) == identity_operator(n, r)


def test_decompose_basis_element_is_indicator():
    for n in range(5):
        for p in valid_triples(n):
            dec = decompose(lambda_matrix(p))
            for q, c in dec.coefficients.items():
                assert c == (1 if q == p else 0)


def test_decompose_laplacian():
    for n in range(5):
        for r in range(n + 1):
            dec = decompose(laplacian_block(n, r))
            for p, c in dec.coefficients.items():
                want = -rat(
                    (p.s * (n - p.s + 1)) * dim_isotypic(n, p.s), math.comb(n, r)
                )
                assert c == want


def test_decompose_random_combination_roundtrip():
    rng = random.Random(29)
    for n in range(1, 6):
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                cap = min(r1, n - r1, r2, n - r2)
                coeffs = {
                    ParamTriple(n, r1, r2, s): rat(
                        rng.randint(-30, 30), rng.randint(1, 9)
                    )
                    for s in range(cap + 1)
                }
                op = zero_operator(n, r1, r2)
                for p, c in coeffs.items():
                    op = op + lambda_matrix(p).scale(c)
                dec = decompose(op)
                assert dec.coefficients == coeffs
                assert dec.reconstruct(r1, r2) == op


def test_decompose_full_space_transform():
    f = fourier_matrix(3)
    dec = decompose(f)
    assert set(dec.coefficients) == set(valid_triples(3))
    for r1 in range(4):
        for r2 in range(4):
            assert dec.reconstruct(r1, r2) == restrict_full(f, r2, r1)


def test_decompose_rejects_non_equivariant():
    num = np.zeros((3, 3), dtype=np.int64)
    num[0, 1] = 1
    op = make_operator(3, 1, 1, num, 1)
    with pytest.raises(ValueError):
        decompose(op)


def test_decompose_rejects_mixed_full_level():
    with pytest.raises(ValueError):
        decompose(zero_operator(3, FULL, 2))
    with pytest.raises(ValueError):
        decompose(zero_operator(3, 2, FULL))


def test_to_tilde_consistency():
    dec = decompose(laplacian_block(4, 2))
    tilded = dec.to_tilde()
    for p, c in dec.coefficients.items():
        assert surd_mul(tilded[p], alpha_const(p)) == surd_from_rat(c)


def test_tilde_unitary_small_case():
    p = ParamTriple(4, 1, 2, 1)
    mat = lambda_matrix(p)
    gram = mat.transpose() @ mat
    assert gram.scale(surd_square(alpha_const(p))) == projection(4, 1, 1)


def test_reindex_commutation_matches_matrix_products():
    rng = random.Random(13)
    for trial in range(25):
        n = rng.randint(1, 4)
        r1 = rng.randint(0, n)
        r2 = rng.randint(0, n)
        num = np.array(
            [
                [rng.randint(-3, 3) for _ in range(math.comb(n, r1))]
                for _ in range(math.comb(n, r2))
            ],
            dtype=np.int64,
        )
        op = make_operator(n, r1, r2, num, 1)
        perm = list(range(n))
        rng.shuffle(perm)
        left = permutation_operator(n, r2, perm) @ op
        right = op @ permutation_operator(n, r1, perm)
        from hharm.harmonics import _commutes_with_perm

        assert _commutes_with_perm(op, tuple(perm)) == (left == right)


def test_decomposition_reconstruct_skips_other_blocks():
    dec = Decomposition(
        4, "plain", {ParamTriple(4, 2, 2, 1): rat(3)}
    )
    assert dec.reconstruct(1, 1) == zero_operator(4, 1, 1)
    assert dec.reconstruct(2, 2) == lambda_matrix(ParamTriple(4, 2, 2, 1)).scale(3)
