"""Certified spectral analysis of nonnegative matrices.

The spectral radius of a nonnegative matrix is itself an eigenvalue (the
Perron root) and carries a nonnegative eigenvector.  This package
computes certified enclosures of that root, detects irreducibility,
reduces any nonnegative matrix to block upper triangular form with
irreducible diagonal blocks, bounds how far the root can move under a
perturbation, and traces how root estimates behave along matrix
sequences and norm-power sequences.
"""

from .matcore import (
    MatrixFormatError,
    apply_symmetric_permutation,
    frobenius_norm,
    identity_permutation,
    matmul,
    nonneg_matrix,
    one_norm_mat,
    one_norm_vec,
    parse_matrix,
    permutation,
    read_matrix_file,
    render_matrix,
    square_matrix,
    write_matrix_file,
)
from .structure import (
    FrobeniusNormalForm,
    frobenius_normal_form,
    is_irreducible,
    is_nilpotent,
    nilpotency_index,
    spectral_block,
    strongly_connected_components,
)
from .solver import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    PerronCertificate,
    perron_irreducible,
    perron_root,
    power_radius_identity_check,
    q_star,
)
from .perturb import PerturbationBound, continuity_certificate, sharpness_probe
from .harness import (
    ConvergenceTrace,
    GelfandTrace,
    NonuniformityDemo,
    SequenceSpec,
    gelfand_trace,
    nonuniformity_demo,
    run_irreducible_trace,
    run_nilpotent_trace,
    run_reducible_trace,
)

__version__ = "0.1.0"

__all__ = [
    "MatrixFormatError",
    "apply_symmetric_permutation",
    "frobenius_norm",
    "identity_permutation",
    "matmul",
    "nonneg_matrix",
    "one_norm_mat",
    "one_norm_vec",
    "parse_matrix",
    "permutation",
    "read_matrix_file",
    "render_matrix",
    "square_matrix",
    "write_matrix_file",
    "FrobeniusNormalForm",
    "frobenius_normal_form",
    "is_irreducible",
    "is_nilpotent",
    "nilpotency_index",
    "spectral_block",
    "strongly_connected_components",
    "DEFAULT_MAX_ITER",
    "DEFAULT_TOL",
    "PerronCertificate",
    "perron_irreducible",
    "perron_root",
    "power_radius_identity_check",
    "q_star",
    "PerturbationBound",
    "continuity_certificate",
    "sharpness_probe",
    "ConvergenceTrace",
    "GelfandTrace",
    "NonuniformityDemo",
    "SequenceSpec",
    "gelfand_trace",
    "nonuniformity_demo",
    "run_irreducible_trace",
    "run_nilpotent_trace",
    "run_reducible_trace",
    "__version__",
]
