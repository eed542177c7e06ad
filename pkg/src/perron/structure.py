"""Digraph structure of a nonnegative matrix.

The digraph has an edge i -> j exactly when ``a[i, j] > 0`` (strict, no
epsilon: pattern questions are combinatorial, tolerances belong to the
solver).  Strongly connected components give the irreducibility test and
the block-upper-triangular normal form with irreducible diagonal blocks.

Convention: every 1x1 matrix counts as irreducible, including ``[[0]]``,
which keeps the block decomposition total.
"""

from dataclasses import dataclass

import numpy as np

from . import matcore

__all__ = [
    "FrobeniusNormalForm",
    "strongly_connected_components",
    "is_irreducible",
    "frobenius_normal_form",
    "is_nilpotent",
    "nilpotency_index",
    "spectral_block",
]


def _adjacency(a: np.ndarray):
    """Neighbor lists in ascending index order (fixes iteration order)."""
    return [np.nonzero(a[i] > 0.0)[0] for i in range(a.shape[0])]


def strongly_connected_components(a) -> list[list[int]]:
    """SCCs of the positivity digraph, Tarjan's algorithm, iterative.

    Components are returned in a topological order of the condensation
    (every edge between distinct components points from an earlier
    component to a later one), with each component's vertices ascending.
    Output is deterministic for a fixed input.
    """
    m = matcore.square_matrix(a)
    n = m.shape[0]
    adj = _adjacency(m)

    index = np.full(n, -1, dtype=np.intp)
    lowlink = np.zeros(n, dtype=np.intp)
    on_stack = np.zeros(n, dtype=bool)
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # explicit call stack of (vertex, next neighbor position)
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            neighbors = adj[v]
            while pos < len(neighbors):
                w = int(neighbors[pos])
                pos += 1
                if index[w] == -1:
                    work.append((v, pos))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])

    # Tarjan emits a component only after everything it reaches, i.e. in
    # reverse topological order; flip so edges point forward.
    sccs.reverse()
    return sccs


def is_irreducible(a) -> bool:
    """True iff the positivity digraph is strongly connected.

    A 1x1 matrix is irreducible by convention, zero entry included.
    """
    m = matcore.nonneg_matrix(a)
    if m.shape[0] == 1:
        return True
    return len(strongly_connected_components(m)) == 1


@dataclass(frozen=True)
class FrobeniusNormalForm:
    """Permutation and block partition with PtAP block upper triangular.

    ``perm`` maps new index -> old index, so the permuted matrix is
    ``apply_symmetric_permutation(a, perm)``.  ``blocks`` are half-open
    ``(start, end)`` ranges in permuted coordinates; ``block_matrices``
    are the corresponding irreducible diagonal blocks.
    """

    perm: np.ndarray
    blocks: tuple[tuple[int, int], ...]
    block_matrices: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return self.perm.size

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(end - start for start, end in self.blocks)

    def block_positions(self, i: int) -> np.ndarray:
        """Original row/column indices occupied by block ``i``."""
        start, end = self.blocks[i]
        return self.perm[start:end]


def frobenius_normal_form(a) -> FrobeniusNormalForm:
    """Decompose into irreducible diagonal blocks in topological order.

    Entries of the permuted matrix below the block diagonal are exactly
    zero; each diagonal block is irreducible (1x1 blocks by convention).
    """
    m = matcore.nonneg_matrix(a)
    comps = strongly_connected_components(m)
    perm = np.array([v for comp in comps for v in comp], dtype=np.intp)
    blocks = []
    start = 0
    for comp in comps:
        blocks.append((start, start + len(comp)))
        start += len(comp)
    permuted = m[np.ix_(perm, perm)]
    mats = tuple(permuted[s:e, s:e].copy() for s, e in blocks)
    for mat in mats:
        mat.flags.writeable = False
    perm.flags.writeable = False
    return FrobeniusNormalForm(perm=perm, blocks=tuple(blocks), block_matrices=mats)


def nilpotency_index(a) -> int | None:
    """Smallest p with a^p = 0, or None if the matrix is not nilpotent.

    Nilpotency is decided structurally (every normal-form block is a 1x1
    zero); the index is then found by repeated multiplication, which is
    exact here because nonnegative products cannot cancel.
    """
    m = matcore.nonneg_matrix(a)
    fnf = frobenius_normal_form(m)
    for mat in fnf.block_matrices:
        if mat.shape[0] != 1 or mat[0, 0] != 0.0:
            return None
    n = m.shape[0]
    power = m.copy()
    p = 1
    while power.any():
        power = power @ m
        p += 1
        if p > n:  # unreachable for a truly nilpotent matrix
            raise AssertionError("nilpotency index exceeded dimension")
    return p


def is_nilpotent(a) -> bool:
    return nilpotency_index(a) is not None


def spectral_block(a, tol=None, max_iter=None) -> int:
    """Index of a normal-form diagonal block whose certified Perron
    interval has the greatest midpoint.  Ties go to the lowest index.
    """
    from . import solver  # deferred: solver builds on this module

    if tol is None:
        tol = solver.DEFAULT_TOL
    if max_iter is None:
        max_iter = solver.DEFAULT_MAX_ITER
    fnf = frobenius_normal_form(a)
    best = 0
    best_mid = -1.0
    for i, mat in enumerate(fnf.block_matrices):
        cert = solver.perron_irreducible(mat, tol=tol, max_iter=max_iter)
        if cert.mid > best_mid:
            best = i
            best_mid = cert.mid
    return best
