"""Named verification suites over the kernel and operator identities.

Each suite is a function n -> Report plus a size guard.  The registry
at the bottom is what the command line front end drives; library users
can call the underlying check functions directly with finer control
(for example check_spherical for a single level and rank).
"""

from __future__ import annotations

import math
import random
from typing import Callable, Dict, NamedTuple

from . import fourier, harmonics
from .errors import require_guard
from .exact import mpq, rat_str
from .kernels import (
    ParamTriple,
    hahn_classical,
    hahn_delta,
    hahn_endpoint,
    hahn_leading,
    hahn_radon,
    hahn_rodrigues,
    hahn_taylor,
    hypergeometric_residual,
    krawtchouk,
    mu_eigenvalue,
    rodrigues_check,
    valid_triples,
    weight,
    weight_delta_pair,
    weight_descent_pair,
)
from .lattice import ORBIT_ENUMERATION_GUARD, orbit_histogram
from .report import Report, row

KERNELS_GUARD = 12
WEIGHTS_GUARD = 12
KRAWTCHOUK_GUARD = 20


def _rational_samples(p: ParamTriple, count: int, salt: int):
    """Deterministic off-lattice sample points for one parameter triple."""
    rng = random.Random(
        p.n * 1_000_003 + p.r1 * 10_007 + p.r2 * 101 + p.s + salt * 7_919
    )
    return [mpq(rng.randint(-60, 60), rng.randint(1, 12)) for _ in range(count)]


def _forward_differences(values, order):
    out = list(values)
    for _ in range(order):
        out = [out[i + 1] - out[i] for i in range(len(out) - 1)]
    return out


def run_kernels(n: int) -> Report:
    """Every closed form of the kernels agrees with every other.

    Covers cross-formula agreement on the window and at off-lattice
    rational points, the normalization at 0, the endpoint value, the
    contracted difference recurrence, degree and leading coefficient
    through finite differences, the second-order difference equation,
    and distinctness of the rank eigenvalues.
    """
    require_guard("run_kernels", n, KERNELS_GUARD)
    rep = Report("kernels", n)
    for p in valid_triples(n):
        params = {"r1": p.r1, "r2": p.r2, "s": p.s}

        ok = True
        witness = (None, None)
        for k in p.window():
            ref = hahn_taylor(p, k)
            others = (
                hahn_radon(p, k),
                hahn_rodrigues(p, k),
                hahn_classical(p, k, "first"),
                hahn_classical(p, k, "second"),
            )
            if any(v != ref for v in others):
                ok = False
                witness = (f"k={k}: " + ",".join(map(rat_str, others)), rat_str(ref))
                break
        if ok:
            for t in _rational_samples(p, 2, salt=1):
                ref = hahn_taylor(p, t)
                if hahn_radon(p, t) != ref or hahn_rodrigues(p, t) != ref:
                    ok = False
                    witness = (f"t={t}", rat_str(ref))
                    break
        rep.checks.append(
            row("kernel-cross-agreement", params, ok, witness[0], witness[1])
        )

        val0 = hahn_taylor(p, 0)
        rep.checks.append(
            row("kernel-normalization", params, val0 == 1, rat_str(val0), "1")
        )

        end_got = hahn_taylor(p, p.r2)
        end_want = hahn_endpoint(p)
        rep.checks.append(
            row(
                "kernel-endpoint",
                params,
                end_got == end_want,
                rat_str(end_got),
                rat_str(end_want),
            )
        )

        points = list(p.window()) + _rational_samples(p, 2, salt=2)
        ok = all(
            hahn_taylor(p, t + 1) - hahn_taylor(p, t) == hahn_delta(p, t)
            for t in points
        )
        rep.checks.append(row("kernel-difference-recurrence", params, ok))

        base = [hahn_taylor(p, p.k_min + i) for i in range(p.s + 2)]
        top = _forward_differences(base, p.s)
        lead = hahn_leading(p)
        ok = (
            lead != 0
            and top[0] == math.factorial(p.s) * lead
            and top[1] == top[0]
        )
        rep.checks.append(
            row(
                "kernel-degree-and-leading",
                params,
                ok,
                rat_str(top[0]),
                rat_str(math.factorial(p.s) * lead),
            )
        )

        ok = True
        witness = (None, None)
        for t in _rational_samples(p, 5, salt=3):
            res = hypergeometric_residual(p, t)
            if res != 0:
                ok = False
                witness = (f"t={t}: {rat_str(res)}", "0")
                break
        rep.checks.append(
            row("hypergeometric-residual", params, ok, witness[0], witness[1])
        )

    mus = [mu_eigenvalue(n, s) for s in range(n // 2 + 1)]
    ok = all(b > a for a, b in zip(mus, mus[1:]))
    rep.checks.append(
        row(
            "eigenvalue-distinctness",
            {},
            ok,
            str(mus),
            "strictly increasing",
        )
    )
    return rep


def run_weights(n: int) -> Report:
    """Orbit weights: enumeration oracle and difference identities."""
    require_guard("run_weights", n, min(WEIGHTS_GUARD, ORBIT_ENUMERATION_GUARD))
    rep = Report("weights", n)
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            params = {"r1": r1, "r2": r2}
            lo, hi = max(0, r2 - r1), min(n - r1, r2)

            hist = orbit_histogram(n, r1, r2)
            want = {k: weight(n, r1, r2, k) for k in range(lo, hi + 1)}
            rep.checks.append(
                row(
                    "weight-matches-enumeration",
                    params,
                    hist == want,
                    str(sorted(hist.items())),
                    str(sorted(want.items())),
                )
            )

            outside = [lo - 1, hi + 1, -3, n + 2]
            ok = all(weight(n, r1, r2, k) == 0 for k in outside)
            rep.checks.append(row("weight-zero-outside-window", params, ok))

            ok = True
            witness = (None, None)
            for t in range(lo - 1, hi + 2):
                lhs, rhs = weight_delta_pair(n, r1, r2, t)
                if lhs != rhs:
                    ok = False
                    witness = (f"t={t}: {rat_str(lhs)}", rat_str(rhs))
                    break
            rep.checks.append(
                row("weight-difference-identity", params, ok, witness[0], witness[1])
            )

            ok = True
            witness = (None, None)
            for t in range(lo - 1, hi + 2):
                lhs, rhs = weight_descent_pair(n, r1, r2, t)
                if lhs != rhs:
                    ok = False
                    witness = (f"t={t}: {rat_str(lhs)}", rat_str(rhs))
                    break
            rep.checks.append(
                row("weight-descent-identity", params, ok, witness[0], witness[1])
            )

    for p in valid_triples(n):
        params = {"r1": p.r1, "r2": p.r2, "s": p.s}
        ok = True
        witness = (None, None)
        for t in range(p.k_min - 1, p.k_max + 2):
            lhs, rhs = rodrigues_check(p, t)
            if lhs != rhs:
                ok = False
                witness = (f"t={t}: {rat_str(lhs)}", rat_str(rhs))
                break
        rep.checks.append(
            row("rodrigues-formula", params, ok, witness[0], witness[1])
        )
    return rep


def run_spherical(n: int) -> Report:
    """Functional equation of every zonal kernel, merged over (r, s)."""
    require_guard("run_spherical", n, harmonics.SPHERICAL_GUARD)
    rep = Report("spherical", n)
    for r in range(n + 1):
        for s in range(min(r, n - r) + 1):
            rep.checks.extend(harmonics.check_spherical(n, r, s).checks)
    return rep


def run_krawtchouk(n: int) -> Report:
    """Value at zero, reflection symmetry, and binomial duality."""
    require_guard("run_krawtchouk", n, KRAWTCHOUK_GUARD)
    rep = Report("krawtchouk", n)

    ok = all(krawtchouk(m, 0, n) == math.comb(n, m) for m in range(n + 1))
    rep.checks.append(row("value-at-zero", {}, ok))

    ok = all(krawtchouk(1, k, n) == n - 2 * k for k in range(n + 1)) if n >= 1 else True
    rep.checks.append(row("degree-one-linear", {}, ok))

    ok = True
    witness = (None, None)
    for m in range(n + 1):
        for k in range(n + 1):
            lhs = krawtchouk(m, k, n)
            rhs = (-1) ** m * krawtchouk(m, n - k, n)
            if lhs != rhs:
                ok = False
                witness = (f"m={m} k={k}: {lhs}", str(rhs))
                break
        if not ok:
            break
    rep.checks.append(row("reflection", {}, ok, witness[0], witness[1]))

    ok = True
    witness = (None, None)
    for m in range(n + 1):
        for k in range(n + 1):
            lhs = math.comb(n, k) * krawtchouk(m, k, n)
            rhs = math.comb(n, m) * krawtchouk(k, m, n)
            if lhs != rhs:
                ok = False
                witness = (f"m={m} k={k}: {lhs}", str(rhs))
                break
        if not ok:
            break
    rep.checks.append(row("duality", {}, ok, witness[0], witness[1]))
    return rep


class SuiteSpec(NamedTuple):
    runner: Callable[[int], Report]
    guard: int


SUITES: Dict[str, SuiteSpec] = {
    "kernels": SuiteSpec(run_kernels, KERNELS_GUARD),
    "weights": SuiteSpec(run_weights, WEIGHTS_GUARD),
    "multiplication": SuiteSpec(
        harmonics.check_multiplication, harmonics.MULTIPLICATION_GUARD
    ),
    "adjoint": SuiteSpec(
        harmonics.check_adjoint_complement, harmonics.ADJOINT_GUARD
    ),
    "tilde": SuiteSpec(harmonics.check_tilde_relations, harmonics.TILDE_GUARD),
    "laplacian": SuiteSpec(harmonics.check_laplacian, harmonics.LAPLACIAN_GUARD),
    "spherical": SuiteSpec(run_spherical, harmonics.SPHERICAL_GUARD),
    "radon": SuiteSpec(
        harmonics.check_radon_annihilation, harmonics.RADON_GUARD
    ),
    "fourier": SuiteSpec(
        fourier.check_fourier_decomposition, fourier.FOURIER_CHECK_GUARD
    ),
    "theorem5": SuiteSpec(fourier.check_theorem5, fourier.THEOREM5_GUARD),
    "krawtchouk": SuiteSpec(run_krawtchouk, KRAWTCHOUK_GUARD),
}


def run_suite(name: str, n: int) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name].runner(n)
