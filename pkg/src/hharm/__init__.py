"""Exact harmonic analysis on the subset lattice of a finite set.

The power set of an n-element ground set, graded by subset size,
carries the natural action of the symmetric group.  This package
constructs the commutant of that action in exact rational arithmetic:
the canonical intertwiner basis indexed by a pair of levels and a
rank, its kernel polynomials (Hahn polynomials in disguise), the
normalization constants, projections, Radon transforms, the level
Laplacian, and the exact Krawtchouk-coefficient decomposition of the
2**n by 2**n sign matrix, together with a fast transform oracle.

Every identity the package claims is verified by an exact check with
tolerance zero; `python -m hharm.cli verify --all` (or the installed
`hharm` script) runs the complete battery.
"""

from .errors import GuardError, require_guard
from .exact import (
    Rat,
    Surd,
    binom,
    falling,
    multinomial,
    rat,
    rat_str,
    rising,
    squarefree_split,
    surd_from_rat,
    surd_mul,
    surd_sqrt_rat,
    surd_square,
)
from .fourier import (
    BlockMatrixK,
    block_matrix,
    check_fourier_decomposition,
    check_theorem5,
    fourier_coeff_plain,
    fourier_coeff_tilde,
    fwht,
)
from .harmonics import (
    BasisElement,
    Decomposition,
    alpha_const,
    check_adjoint_complement,
    check_laplacian,
    check_multiplication,
    check_radon_annihilation,
    check_spherical,
    check_tilde_relations,
    decompose,
    dim_isotypic,
    hs_inner,
    lambda_op,
    projection,
)
from .kernels import (
    KernelTable,
    ParamTriple,
    hahn_classical,
    hahn_delta,
    hahn_leading,
    hahn_radon,
    hahn_rodrigues,
    hahn_taylor,
    hypergeometric_residual,
    kernel_table,
    krawtchouk,
    mu_eigenvalue,
    rodrigues_check,
    valid_triples,
    weight,
)
from .lattice import (
    FULL,
    Operator,
    complement_op,
    diff_size,
    fourier_matrix,
    intertwiner_from_kernel,
    laplacian_block,
    level_elements,
    orbit_count,
    radon_down,
    radon_up,
)
from .report import Report, CheckResult, REPORT_SCHEMA
from .suites import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "BasisElement",
    "BlockMatrixK",
    "CheckResult",
    "Decomposition",
    "FULL",
    "GuardError",
    "KernelTable",
    "Operator",
    "ParamTriple",
    "REPORT_SCHEMA",
    "Rat",
    "Report",
    "SUITES",
    "Surd",
    "alpha_const",
    "binom",
    "block_matrix",
    "check_adjoint_complement",
    "check_fourier_decomposition",
    "check_laplacian",
    "check_multiplication",
    "check_radon_annihilation",
    "check_spherical",
    "check_theorem5",
    "check_tilde_relations",
    "complement_op",
    "decompose",
    "diff_size",
    "dim_isotypic",
    "falling",
    "fourier_coeff_plain",
    "fourier_coeff_tilde",
    "fourier_matrix",
    "fwht",
    "hahn_classical",
    "hahn_delta",
    "hahn_leading",
    "hahn_radon",
    "hahn_rodrigues",
    "hahn_taylor",
    "hs_inner",
    "hypergeometric_residual",
    "intertwiner_from_kernel",
    "kernel_table",
    "krawtchouk",
    "lambda_op",
    "laplacian_block",
    "level_elements",
    "mu_eigenvalue",
    "multinomial",
    "orbit_count",
    "projection",
    "radon_down",
    "radon_up",
    "rat",
    "rat_str",
    "require_guard",
    "rising",
    "rodrigues_check",
    "run_suite",
    "squarefree_split",
    "surd_from_rat",
    "surd_mul",
    "surd_sqrt_rat",
    "surd_square",
    "valid_triples",
    "weight",
]
