"""Perturbation certificates for the Perron root of an irreducible matrix.

For irreducible nonnegative A with left Perron vector q (1-norm one) the
spectral radius moves by at most ||E||_2 / min_i(q_i) under any nonnegative
perturbation A + E of A.  The Frobenius norm bounds the spectral norm from
above, so it can stand in for it without weakening soundness.
"""

from dataclasses import dataclass

import numpy as np

from . import matcore, solver

__all__ = ["PerturbationBound", "continuity_certificate", "sharpness_probe"]


@dataclass(frozen=True)
class PerturbationBound:
    """Certified bound on the Perron root shift caused by a perturbation.

    ``enclosure`` is a closed interval guaranteed to contain the spectral
    radius of the perturbed matrix: the base certificate widened by the
    bound on each side.
    """

    base: solver.PerronCertificate
    q_star: float
    e_norm: float
    bound: float
    enclosure: tuple[float, float]
    norm: str = "frobenius"


def continuity_certificate(
    a, a_prime, tol=solver.DEFAULT_TOL, max_iter=solver.DEFAULT_MAX_ITER
) -> PerturbationBound:
    """Bound the radius shift from irreducible a to nonnegative a_prime.

    a_prime only needs nonnegativity, it may be reducible or even zero;
    a itself must be irreducible, since that is what makes its left
    Perron vector strictly positive.  The bound is
    ||a_prime - a||_F / q_star.
    """
    m = matcore.nonneg_matrix(a)
    mp = matcore.nonneg_matrix(a_prime)
    if mp.shape != m.shape:
        raise ValueError(f"shape mismatch: matrix {m.shape}, perturbed {mp.shape}")
    cert = solver.perron_irreducible(m, tol=tol, max_iter=max_iter)
    qs = solver.q_star(cert)
    e_norm = matcore.frobenius_norm(mp - m)
    bound = e_norm / qs
    enclosure = (max(cert.lo - bound, 0.0), cert.hi + bound)
    return PerturbationBound(
        base=cert, q_star=qs, e_norm=e_norm, bound=bound, enclosure=enclosure
    )


def sharpness_probe(
    a,
    direction,
    scales,
    tol=solver.DEFAULT_TOL,
    max_iter=solver.DEFAULT_MAX_ITER,
) -> list[tuple[float, float, float]]:
    """Compare the certified bound with the observed shift along one direction.

    For each scale s the perturbation is s * direction.  Returns rows
    (scale, bound, observed) where bound is s * ||direction||_F / q_star
    and observed is the distance between the certificate midpoints of the
    base and perturbed matrices.  The bound must dominate the observed
    shift up to certificate widths; the ratio shows how much slack the
    worst-case constant leaves on this particular direction.
    """
    m = matcore.nonneg_matrix(a)
    d = matcore.square_matrix(direction)
    if d.shape != m.shape:
        raise ValueError(f"shape mismatch: matrix {m.shape}, direction {d.shape}")
    cert = solver.perron_irreducible(m, tol=tol, max_iter=max_iter)
    qs = solver.q_star(cert)
    base_bound = matcore.frobenius_norm(d) / qs
    rows = []
    for s in scales:
        s = float(s)
        if s < 0.0:
            raise ValueError(f"scales must be nonnegative, got {s}")
        pert = m + s * d
        if np.any(pert < 0.0):
            raise ValueError(
                f"scale {s} drives the perturbed matrix out of the nonnegative cone"
            )
        shifted = solver.perron_root(pert, tol=tol, max_iter=max_iter)
        observed = abs(shifted.mid - cert.mid)
        rows.append((s, s * base_bound, observed))
    return rows
