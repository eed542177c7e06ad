"""Certified Perron root and Perron vector computation.

Irreducible matrices get a Collatz-Wielandt interval from a shifted power
iteration; reducible matrices are split into irreducible diagonal blocks
first and the block intervals are combined.  Certificates report closed
intervals [lo, hi] that always contain the spectral radius, converged or
not; ``converged`` says whether the requested width was reached.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import matcore, structure
from ._kernels import collatz_wielandt

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "PerronCertificate",
    "perron_irreducible",
    "perron_root",
    "q_star",
    "power_radius_identity_check",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10**6


@dataclass(frozen=True)
class PerronCertificate:
    """Certified enclosure of a Perron root.

    ``right_vector`` and ``left_vector`` are 1-norm-normalized nonnegative
    eigenvector approximations, present only when the certified matrix is
    irreducible (strictly positive then, for n >= 2).  ``residual`` is
    ||A v - mid v||_1 for the right vector, None when no vector is carried.
    """

    lo: float
    hi: float
    right_vector: np.ndarray | None
    left_vector: np.ndarray | None
    residual: float | None
    iterations: int
    converged: bool

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")


def _freeze(v: np.ndarray) -> np.ndarray:
    v = np.ascontiguousarray(v, dtype=np.float64)
    v.flags.writeable = False
    return v


def _validate_iteration_params(tol, max_iter):
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if int(max_iter) < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    return float(tol), int(max_iter)


def perron_irreducible(b, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> PerronCertificate:
    """Certify the Perron root and both Perron vectors of an irreducible matrix.

    The interval comes from the final ratio bounds of the shifted power
    iteration; the left vector is obtained by running the same iteration
    on the transpose.  A 1x1 matrix is certified exactly.  Raises
    ValueError for reducible input; running out of iterations is not an
    error, the certificate is returned wide with ``converged=False``.
    """
    m = matcore.nonneg_matrix(b)
    tol, max_iter = _validate_iteration_params(tol, max_iter)
    if not structure.is_irreducible(m):
        raise ValueError("matrix is reducible; use perron_root")
    n = m.shape[0]
    if n == 1:
        val = float(m[0, 0])
        one = _freeze(np.ones(1))
        return PerronCertificate(
            lo=val, hi=val, right_vector=one, left_vector=one,
            residual=0.0, iterations=0, converged=True,
        )
    lo, hi, x, iters, conv = collatz_wielandt(m, tol, max_iter)
    lo = max(lo, 0.0)
    lt_lo, lt_hi, y, lt_iters, lt_conv = collatz_wielandt(
        np.ascontiguousarray(m.T), tol, max_iter
    )
    mid = 0.5 * (lo + hi)
    residual = matcore.one_norm_vec(m @ x - mid * x)
    return PerronCertificate(
        lo=lo,
        hi=hi,
        right_vector=_freeze(x),
        left_vector=_freeze(y),
        residual=residual,
        iterations=iters + lt_iters,
        converged=conv and lt_conv,
    )


def _certify_block(mat, tol, max_iter) -> PerronCertificate:
    if mat.shape[0] == 1:
        val = float(mat[0, 0])
        return PerronCertificate(
            lo=val, hi=val, right_vector=None, left_vector=None,
            residual=None, iterations=0, converged=True,
        )
    return perron_irreducible(mat, tol=tol, max_iter=max_iter)


def perron_root(a, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> PerronCertificate:
    """Certify the Perron root of any nonnegative matrix.

    Splits into irreducible diagonal blocks and combines the block
    intervals; the spectral radius is the maximum of the block radii, so
    [max of lows, max of highs] encloses it.  Perron vectors are carried
    only when the whole matrix is irreducible (reducible matrices need
    not have a strictly positive eigenvector; certify the spectral block
    directly if a vector is wanted).
    """
    m = matcore.nonneg_matrix(a)
    tol, max_iter = _validate_iteration_params(tol, max_iter)
    fnf = structure.frobenius_normal_form(m)
    if len(fnf.blocks) == 1:
        return perron_irreducible(m, tol=tol, max_iter=max_iter)
    lo = 0.0
    hi = 0.0
    iterations = 0
    converged = True
    for mat in fnf.block_matrices:
        cert = _certify_block(mat, tol, max_iter)
        lo = max(lo, cert.lo)
        hi = max(hi, cert.hi)
        iterations += cert.iterations
        converged = converged and cert.converged
    return PerronCertificate(
        lo=lo, hi=hi, right_vector=None, left_vector=None,
        residual=None, iterations=iterations, converged=converged,
    )


def q_star(cert: PerronCertificate) -> float:
    """Smallest entry of the certificate's left Perron vector."""
    if cert.left_vector is None:
        raise ValueError("certificate carries no left Perron vector")
    qs = float(cert.left_vector.min())
    if qs <= 0.0:
        raise ValueError(f"left Perron vector is not strictly positive (min {qs})")
    return qs


def _pow_interval(lo: float, hi: float, p: int) -> tuple[float, float]:
    # interval [lo, hi]^p for 0 <= lo <= hi, rounded outward one ulp per step
    rlo, rhi = 1.0, 1.0
    for _ in range(p):
        rlo = math.nextafter(rlo * lo, -math.inf)
        rhi = math.nextafter(rhi * hi, math.inf)
    return max(rlo, 0.0), rhi


def power_radius_identity_check(
    a, p: int, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Certified intervals for rho(A)^p and for rho(A^p).

    The two real quantities coincide, so the returned intervals must
    intersect.  Both are padded outward for the floating-point rounding
    they carry: the first for the explicit interval power, the second for
    the rounding of the entries of A^p (relative, a few ulps).  Raises on
    overflow in the matrix power.
    """
    m = matcore.nonneg_matrix(a)
    p = int(p)
    if p < 1:
        raise ValueError(f"power must be >= 1, got {p}")
    base = perron_root(m, tol=tol, max_iter=max_iter)
    powered_interval = _pow_interval(base.lo, base.hi, p)

    with np.errstate(over="ignore"):
        mp = np.linalg.matrix_power(m, p)
    if not np.isfinite(mp).all():
        raise ValueError(f"overflow computing matrix power {p}")
    cert = perron_root(mp, tol=tol, max_iter=max_iter)
    # entries of the floating A^p differ from the real ones by a relative
    # error below (p-1)*(n+2) ulps; nonnegative sums cannot cancel
    pad = (p - 1) * (m.shape[0] + 2) * float(np.finfo(np.float64).eps)
    power_cert = (cert.lo * (1.0 - pad), cert.hi * (1.0 + pad))
    return powered_interval, power_cert
