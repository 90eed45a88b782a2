"""Command line front end: verification suites and exact tables.

Subcommands:

  kernel          print one kernel's window values as exact fractions
  verify          run verification suites and report pass/fail
  fourier-coeffs  print the sign-transform coefficients over the basis
  fwht            apply the fast sign transform to an integer vector

Exit codes: 0 all requested work passed, 1 at least one check failed,
2 usage error (bad arguments, size guard exceeded, malformed input).

Output in json and csv formats is byte-deterministic; pass --timing to
verify to include wall-clock milliseconds per suite (which naturally
varies between runs).  The environment variable HHARM_THREADS caps the
number of worker processes used by verify; set it to 1 to run suites
inline in a single process.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import GuardError
from .exact import rat_str
from .fourier import fourier_coeff_plain, fourier_coeff_tilde, fwht
from .kernels import ParamTriple, kernel_table, valid_triples
from .lattice import MAX_GROUND_SET
from .report import RENDERERS, Report, row
from .suites import SUITES


class UsageError(Exception):
    pass


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_reports(reports, fmt: str) -> str:
    return RENDERERS[fmt](reports)


def _kernel_report(args) -> Report:
    if args.n is None:
        raise UsageError("kernel requires --n")
    try:
        p = ParamTriple(args.n, args.r1, args.r2, args.s)
    except ValueError as exc:
        raise UsageError(str(exc))
    table = kernel_table(p)
    rep = Report("kernel", args.n)
    for k, value in table.rows():
        rep.checks.append(
            row(
                "kernel-value",
                {"k": k, "r1": p.r1, "r2": p.r2, "s": p.s},
                True,
                lhs=rat_str(value),
            )
        )
    return rep


def _kernel_text(rep: Report) -> str:
    lines = ["k value"]
    for check in rep.checks:
        lines.append(f"{check.params['k']} {check.lhs}")
    return "\n".join(lines) + "\n"


def cmd_kernel(args) -> int:
    rep = _kernel_report(args)
    if args.format == "text":
        _emit(_kernel_text(rep), args.out)
    else:
        _emit(_render_reports([rep], args.format), args.out)
    return 0


def _coeff_report(args) -> Report:
    if args.n is None:
        raise UsageError("fourier-coeffs requires --n")
    if not 0 <= args.n <= MAX_GROUND_SET:
        raise UsageError(
            f"fourier-coeffs: need 0 <= n <= {MAX_GROUND_SET}, got {args.n}"
        )
    rep = Report("fourier-coeffs", args.n)
    for p in valid_triples(args.n):
        twin = ParamTriple(p.n, p.r2, p.r1, p.s)
        here, there = fourier_coeff_tilde(p), fourier_coeff_tilde(twin)
        symmetric = here == there
        if args.basis == "plain":
            value = rat_str(fourier_coeff_plain(p))
        else:
            value = str(here)
        rep.checks.append(
            row(
                "coefficient",
                {"r1": p.r1, "r2": p.r2, "s": p.s, "basis": args.basis},
                symmetric,
                lhs=value,
                rhs=None if symmetric else str(there),
            )
        )
    return rep


def _coeff_text(rep: Report) -> str:
    lines = ["r1 r2 s value symmetric"]
    for check in rep.checks:
        pr = check.params
        flag = "yes" if check.passed else "no"
        lines.append(f"{pr['r1']} {pr['r2']} {pr['s']} {check.lhs} {flag}")
    return "\n".join(lines) + "\n"


def cmd_fourier_coeffs(args) -> int:
    rep = _coeff_report(args)
    if args.format == "text":
        _emit(_coeff_text(rep), args.out)
    else:
        _emit(_render_reports([rep], args.format), args.out)
    return 0 if rep.passed else 1


def _worker_count(task_count: int) -> int:
    env = os.environ.get("HHARM_THREADS", "").strip()
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise UsageError(f"HHARM_THREADS must be an integer, got {env!r}")
        if cap < 1:
            raise UsageError(f"HHARM_THREADS must be >= 1, got {cap}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, task_count))


def _run_one(task):
    name, n, timing = task
    start = time.perf_counter()
    report = SUITES[name].runner(n)
    if timing:
        report.ms = int((time.perf_counter() - start) * 1000)
    return report


def cmd_verify(args) -> int:
    if args.all and args.suite:
        raise UsageError("pass either --all or --suite, not both")
    if args.all:
        names = list(SUITES)
    elif args.suite:
        names = list(dict.fromkeys(args.suite))
    else:
        raise UsageError("verify requires --all or at least one --suite")

    tasks = []
    for name in names:
        guard = SUITES[name].guard
        if args.n is None:
            n_eff = guard
        elif args.n > guard:
            raise UsageError(
                f"suite {name}: n={args.n} exceeds the guard {guard}; "
                "--n only overrides downward"
            )
        else:
            n_eff = args.n
        tasks.append((name, n_eff, args.timing))

    workers = _worker_count(len(tasks))
    if workers == 1:
        reports = [_run_one(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, tasks))
    reports.sort(key=lambda rep: rep.suite)
    _emit(_render_reports(reports, args.format), args.out)
    return 0 if all(rep.passed for rep in reports) else 1


def cmd_fwht(args) -> int:
    try:
        with open(args.input, "r", encoding="ascii") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise UsageError(f"input must be whitespace-separated integers: {exc}")
    size = len(values)
    if args.n is None:
        if size == 0 or size & (size - 1):
            raise UsageError(
                f"input length {size} is not a power of two; pass --n explicitly"
            )
        n = size.bit_length() - 1
    else:
        n = args.n
        if size != 1 << n:
            raise UsageError(f"input length {size} does not equal 2**{n}")
    try:
        transformed = fwht(values, n)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(" ".join(str(v) for v in transformed) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hharm",
        description="Exact verification of subset-lattice harmonic identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_format=True):
        sp.add_argument("--n", type=int, default=None, help="ground set size")
        if with_format:
            sp.add_argument(
                "--format",
                choices=("text", "json", "csv"),
                default="text",
                help="output format (default text)",
            )
        sp.add_argument("--out", default=None, help="write output to this file")

    sp = sub.add_parser("kernel", help="print one kernel's window values")
    add_common(sp)
    sp.add_argument("--r1", type=int, required=True)
    sp.add_argument("--r2", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("verify", help="run verification suites")
    add_common(sp)
    sp.add_argument("--all", action="store_true", help="run every suite")
    sp.add_argument(
        "--suite",
        action="append",
        choices=sorted(SUITES),
        help="suite to run (repeatable)",
    )
    sp.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock ms per suite (breaks byte determinism)",
    )
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser(
        "fourier-coeffs", help="print sign-transform coefficients"
    )
    add_common(sp)
    sp.add_argument(
        "--basis",
        choices=("plain", "tilde"),
        default="plain",
        help="coefficient basis (default plain)",
    )
    sp.set_defaults(func=cmd_fourier_coeffs)

    sp = sub.add_parser("fwht", help="fast sign transform of an integer vector")
    sp.add_argument("input", help="file of whitespace-separated integers")
    add_common(sp, with_format=False)
    sp.set_defaults(func=cmd_fwht)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n is not None and args.n < 0:
        print(f"error: n must be nonnegative, got {args.n}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
