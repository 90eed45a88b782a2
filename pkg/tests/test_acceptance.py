"""Acceptance gate: the thirteen exactness criteria, each timed.

Every check here is exact (integer or rational equality, tolerance
zero).  Each test sweeps the full stated parameter range, asserts the
wall-clock budget, and prints one summary line; run with -s to see the
lines, or rely on the per-test pass / fail report.
"""

import json
import math
import os
import random
import subprocess
import sys
import time

import numpy as np

import jsonschema

from hharm.exact import rat
from hharm.fourier import (
    check_fourier_decomposition,
    check_theorem5,
    fourier_coeff_plain,
    fwht,
)
from hharm.harmonics import (
    check_adjoint_complement,
    check_laplacian,
    check_multiplication,
    composition_constant,
    hs_inner,
    hs_norm_expected,
    lambda_matrix,
)
from hharm.kernels import (
    ParamTriple,
    hahn_classical,
    hahn_radon,
    hahn_rodrigues,
    hahn_taylor,
    hypergeometric_residual,
    krawtchouk,
    mu_eigenvalue,
    rank_cap,
    rodrigues_check,
    valid_triples,
    weight,
    weight_delta_pair,
    weight_descent_pair,
)
from hharm.lattice import fourier_matrix, orbit_count
from hharm.report import REPORT_SCHEMA
from hharm.suites import run_spherical


def timed():
    return time.perf_counter()


def report(number, elapsed, budget, text):
    assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"
    print(f"PASS criterion {number:02d}: {text} ({elapsed:.2f}s)")


def test_criterion_01_kernel_route_agreement():
    start = timed()
    checked = 0
    for n in range(13):
        for p in valid_triples(n):
            for k in p.window():
                v = hahn_taylor(p, k)
                assert hahn_radon(p, k) == v
                assert hahn_rodrigues(p, k) == v
                assert hahn_classical(p, k, variant="first") == v
                assert hahn_classical(p, k, variant="second") == v
                checked += 1
    report(
        1,
        timed() - start,
        10,
        f"five kernel routes agree at {checked} window points, n <= 12",
    )


def test_criterion_02_difference_equation():
    start = timed()
    tuples = 0
    for n in range(13):
        mus = [mu_eigenvalue(n, s) for s in range(n // 2 + 1)]
        assert sorted(set(mus)) == mus
        for p in valid_triples(n):
            assert mu_eigenvalue(n, p.s) == p.s * (n - p.s + 1)
            rng = random.Random(900_001 + 31 * n + 7 * p.r1 + 5 * p.r2 + p.s)
            for _ in range(5):
                t = rat(rng.randint(-60, 60), rng.randint(1, 12))
                assert hypergeometric_residual(p, t) == 0
            tuples += 1
    report(
        2,
        timed() - start,
        5,
        f"difference equation residual vanishes at 5 rational points "
        f"for {tuples} tuples, n <= 12",
    )


def test_criterion_03_weight_equals_enumeration():
    start = timed()
    checked = 0
    for n in range(9):
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                for k in range(-1, n + 2):
                    assert weight(n, r1, r2, k) == orbit_count(n, r1, r2, k)
                    checked += 1
    report(
        3,
        timed() - start,
        5,
        f"closed-form weight equals brute-force orbit count, "
        f"{checked} cases, n <= 8",
    )


def test_criterion_04_multiplication_table():
    start = timed()
    total = 0
    for n in range(9):
        rep = check_multiplication(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    # recover the constant from the matrices on one nontrivial case
    down = lambda_matrix(ParamTriple(6, 2, 3, 1))
    up = lambda_matrix(ParamTriple(6, 3, 2, 1))
    target = lambda_matrix(ParamTriple(6, 2, 2, 1))
    prod = up @ down
    i, j = 0, 1
    assert target.entry(i, j) != 0
    ratio = prod.entry(i, j) / target.entry(i, j)
    assert ratio == composition_constant(6, 3, 1) == rat(20, 5)
    assert prod == target.scale(ratio)
    report(
        4,
        timed() - start,
        60,
        f"composition table with its scaling constant, {total} checks, n <= 8",
    )


def test_criterion_05_adjoint_and_complement():
    start = timed()
    total = 0
    for n in range(11):
        rep = check_adjoint_complement(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    report(
        5,
        timed() - start,
        60,
        f"adjoint and complement relations, {total} checks, n <= 10",
    )


def test_criterion_06_hilbert_schmidt_norms():
    start = timed()
    # the independent small oracle: orbit sizes times squared kernel values
    p = ParamTriple(4, 2, 2, 1)
    oracle = sum(
        weight(4, 2, 2, k) * hahn_taylor(p, k) ** 2 for k in p.window()
    )
    assert oracle == 12
    assert hs_inner(lambda_matrix(p), lambda_matrix(p)) == oracle
    assert hs_norm_expected(p) == oracle
    norms = 0
    for n in range(11):
        mats = {}
        for q in valid_triples(n):
            mats[q] = lambda_matrix(q)
            assert hs_inner(mats[q], mats[q]) == hs_norm_expected(q)
            norms += 1
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                cap = rank_cap(n, r1, r2)
                for s1 in range(cap + 1):
                    for s2 in range(s1 + 1, cap + 1):
                        a = mats[ParamTriple(n, r1, r2, s1)]
                        b = mats[ParamTriple(n, r1, r2, s2)]
                        assert hs_inner(a, b) == 0
    report(
        6,
        timed() - start,
        60,
        f"Hilbert-Schmidt norms and orthogonality, {norms} elements, n <= 10",
    )


def test_criterion_07_laplacian():
    start = timed()
    total = 0
    for n in range(11):
        rep = check_laplacian(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    report(
        7,
        timed() - start,
        30,
        f"walk generator eigenvectors and spectral resolution, "
        f"{total} checks, n <= 10",
    )


def test_criterion_08_spherical_functional_equation():
    start = timed()
    total = 0
    for n in range(9):
        rep = run_spherical(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    report(
        8,
        timed() - start,
        30,
        f"zonal functional equation by orbit averaging, {total} checks, n <= 8",
    )


def test_criterion_09_rodrigues_and_weight_identities():
    start = timed()
    points = 0
    for n in range(11):
        for p in valid_triples(n):
            for t in range(p.k_min - 1, p.k_max + 2):
                lhs, rhs = rodrigues_check(p, t)
                assert lhs == rhs
                points += 1
        for r1 in range(n + 1):
            for r2 in range(n + 1):
                lo, hi = max(0, r2 - r1), min(n - r1, r2)
                for t in range(lo - 1, hi + 2):
                    lhs, rhs = weight_delta_pair(n, r1, r2, t)
                    assert lhs == rhs
                    lhs, rhs = weight_descent_pair(n, r1, r2, t)
                    assert lhs == rhs
                    points += 1
    report(
        9,
        timed() - start,
        10,
        f"Rodrigues formula and weight shift identities at {points} "
        f"lattice points, n <= 10",
    )


def test_criterion_10_transform_decomposition():
    start = timed()
    total = 0
    for n in range(11):
        rep = check_fourier_decomposition(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    rational = 0
    for n in range(13):
        for p in valid_triples(n):
            fourier_coeff_plain(p)  # raises if the surd fails to cancel
            rational += 1
    report(
        10,
        timed() - start,
        120,
        f"sign transform equals its basis expansion, {total} checks "
        f"for n <= 10; {rational} coefficients rational for n <= 12",
    )


def test_criterion_11_block_structure_and_fast_transform():
    start = timed()
    total = 0
    for n in range(9):
        rep = check_theorem5(n)
        assert rep.passed, rep.failures
        total += len(rep.checks)
    for n in range(11):
        dense = fourier_matrix(n)
        assert dense == dense.transpose()
        squared = dense @ dense
        eye = np.eye(1 << n, dtype=np.int64) * (1 << n)
        assert squared.den == 1
        assert np.array_equal(squared.num.astype(np.int64), eye)
    vector_counts = {11: 4, 12: 4, 13: 3, 14: 3, 15: 2, 16: 2}
    transforms = 0
    for n in range(17):
        count = vector_counts.get(n, 8)
        rng = random.Random(3_000_017 + n)
        dim = 1 << n
        for _ in range(count):
            u = [rng.randint(-999, 999) for _ in range(dim)]
            v = [rng.randint(-999, 999) for _ in range(dim)]
            fu, fv = fwht(u, n), fwht(v, n)
            # symmetry through the pairing, involution through re-application
            assert sum(a * b for a, b in zip(u, fv)) == sum(
                a * b for a, b in zip(fu, v)
            )
            assert fwht(fu, n) == [dim * x for x in u]
            transforms += 3
        if n <= 10:
            dense_num = fourier_matrix(n).num.astype(np.int64)
            w = [rng.randint(-999, 999) for _ in range(dim)]
            assert fwht(w, n) == list(dense_num @ np.array(w, dtype=np.int64))
            transforms += 1
    report(
        11,
        timed() - start,
        60,
        f"block conjugation identities for n <= 8; dense symmetry and "
        f"scaled involution for n <= 10 and via {transforms} fast "
        f"transforms up to n = 16",
    )


def test_criterion_12_krawtchouk_relations():
    start = timed()
    checked = 0
    for n in range(21):
        for m in range(n + 1):
            assert krawtchouk(m, 0, n) == math.comb(n, m)
            for k in range(n + 1):
                assert krawtchouk(m, n - k, n) == (-1) ** m * krawtchouk(m, k, n)
                assert math.comb(n, k) * krawtchouk(m, k, n) == math.comb(
                    n, m
                ) * krawtchouk(k, m, n)
                checked += 1
    report(
        12,
        timed() - start,
        5,
        f"Krawtchouk evaluation, reflection and duality, {checked} "
        f"triples, n <= 20",
    )


def test_criterion_13_cli_contract(tmp_path):
    start = timed()
    env = dict(os.environ)

    def cli(*argv):
        return subprocess.run(
            [sys.executable, "-m", "hharm.cli", *argv],
            capture_output=True,
            text=True,
            env=env,
            cwd=tmp_path,
        )

    full = cli("verify", "--n", "6", "--all")
    assert full.returncode == 0, full.stdout + full.stderr
    assert full.stdout.splitlines()[-1].startswith("result=PASS")

    first = cli("verify", "--n", "5", "--all", "--format", "json")
    second = cli("verify", "--n", "5", "--all", "--format", "json")
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert all(rep["checks"] for rep in payload)

    guard = cli("verify", "--n", "20", "--suite", "multiplication")
    assert guard.returncode == 2
    assert "exceeds the guard" in guard.stderr

    report(
        13,
        timed() - start,
        120,
        "verify --n 6 --all exits 0; JSON schema-valid and "
        "byte-deterministic; guarded sizes rejected",
    )
