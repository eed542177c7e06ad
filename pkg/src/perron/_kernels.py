"""Hot loop of the solver: shifted power iteration with ratio bounds.

Iterates x <- (B + I)x / ||(B + I)x||_1 from the uniform positive start.
For every strictly positive x the ratios of ((B + I)x) to x, minus the
shift, enclose the spectral radius of B, so each sweep yields a certified
interval; the shift makes the iteration converge even for periodic
patterns such as cycles.

Two interchangeable implementations of the same contract live here: a
numba-jitted kernel and a pure numpy twin.  The jitted kernel is used by
default; set ``PERRON_NO_NUMBA=1`` in the environment (before import) to
select the numpy path, e.g. where numba is unavailable or for timing
comparisons (see benchmarks/bench_kernels.py).
"""

import os

import numpy as np

__all__ = ["collatz_wielandt", "collatz_wielandt_numpy", "collatz_wielandt_numba",
           "NUMBA_ENABLED"]


def collatz_wielandt_numpy(b, tol, max_iter):
    """Pure numpy path.  Returns (lo, hi, x, iterations, converged)."""
    n = b.shape[0]
    x = np.full(n, 1.0 / n)
    lo = 0.0
    hi = np.inf
    it = 0
    while it < max_iter:
        it += 1
        y = b @ x + x
        r = y / x
        lo = float(r.min()) - 1.0
        hi = float(r.max()) - 1.0
        x = y / y.sum()
        if hi - lo <= tol:
            return lo, hi, x, it, True
    return lo, hi, x, it, False


def _cw_loop(b, tol, max_iter):
    # same contract as collatz_wielandt_numpy; written with explicit loops
    # so numba compiles it to straight-line code (n is tiny, BLAS dispatch
    # per iteration would dominate)
    n = b.shape[0]
    x = np.full(n, 1.0 / n)
    y = np.empty(n)
    lo = 0.0
    hi = np.inf
    it = 0
    while it < max_iter:
        it += 1
        for i in range(n):
            acc = x[i]
            row = b[i]
            for j in range(n):
                acc += row[j] * x[j]
            y[i] = acc
        rmin = np.inf
        rmax = 0.0
        total = 0.0
        for i in range(n):
            r = y[i] / x[i]
            if r < rmin:
                rmin = r
            if r > rmax:
                rmax = r
            total += y[i]
        lo = rmin - 1.0
        hi = rmax - 1.0
        for i in range(n):
            x[i] = y[i] / total
        if hi - lo <= tol:
            return lo, hi, x, it, True
    return lo, hi, x, it, False


def _want_numba() -> bool:
    flag = os.environ.get("PERRON_NO_NUMBA", "").strip().lower()
    return flag not in ("1", "true", "yes", "on")


collatz_wielandt_numba = None
NUMBA_ENABLED = False

if _want_numba():
    try:
        import numba
    except ImportError:
        numba = None
    if numba is not None:
        collatz_wielandt_numba = numba.njit(cache=True)(_cw_loop)
        NUMBA_ENABLED = True

if NUMBA_ENABLED:
    collatz_wielandt = collatz_wielandt_numba
else:
    collatz_wielandt = collatz_wielandt_numpy
