"""Dense linear algebra over GF(2^b) on ``uint8`` matrices.

Used for local column repair, the generic erasure solver and every rank
check in :mod:`ebrcodes.analysis`. Matrices are small (a few hundred
columns at most), so plain Gauss-Jordan elimination is enough.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldTable


def matmul(a: np.ndarray, b: np.ndarray, field: FieldTable) -> np.ndarray:
    """``a @ b`` with field arithmetic; ``a`` is (m, k), ``b`` is (k, n)."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if field.is_binary:
        return ((a.astype(np.int64) @ b.astype(np.int64)) & 1).astype(np.uint8)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    table = field.mul_table
    for k in range(a.shape[1]):
        col = a[:, k]
        if not col.any():
            continue
        out ^= table[col[:, None], b[k][None, :]]
    return out


def rref(m: np.ndarray, field: FieldTable, ncols: int | None = None):
    """Reduced row echelon form.

    Only the first ``ncols`` columns are used as pivot candidates; the rest
    ride along (an augmented right-hand side). Returns ``(R, pivots)``.
    """
    r = np.array(m, dtype=np.uint8, copy=True)
    rows, cols = r.shape
    if ncols is None:
        ncols = cols
    pivots = []
    row = 0
    table = field.mul_table
    for col in range(ncols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        lead = int(r[row, col])
        if lead != 1:
            r[row] = table[field.inv(lead)][r[row]]
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            if field.is_binary:
                r[others] ^= r[row]
            else:
                r[others] ^= table[r[others, col][:, None], r[row][None, :]]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, field: FieldTable) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, field)[1])


def nullspace(m: np.ndarray, field: FieldTable) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}``."""
    m = np.asarray(m, dtype=np.uint8)
    n = m.shape[1]
    r, pivots = rref(m, field)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            # characteristic 2: moving r[row, f] across the equation keeps its sign
            basis[i, pc] = r[row, f]
    return basis


def erasure_solver(a: np.ndarray, unknown, field: FieldTable) -> np.ndarray | None:
    """Linear map recovering unknown coordinates of a null vector of ``a``.

    Returns ``X`` with ``x[unknown] = X @ x[known]`` for every ``x`` in the
    null space of ``a``, where ``known`` is the complement of ``unknown`` in
    increasing order. Returns ``None`` when ``a[:, unknown]`` is rank
    deficient, i.e. the unknowns are not determined.
    """
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[1]
    unknown = list(unknown)
    uset = set(unknown)
    known = [c for c in range(n) if c not in uset]
    aug = np.concatenate([a[:, unknown], a[:, known]], axis=1)
    r, pivots = rref(aug, field, ncols=len(unknown))
    if len(pivots) < len(unknown):
        return None
    # row i of r reads: x_u[i] + r[i, known] . x_known = 0
    return r[:len(unknown), len(unknown):].copy()


def known_indices(n: int, unknown) -> list[int]:
    uset = set(unknown)
    return [c for c in range(n) if c not in uset]
