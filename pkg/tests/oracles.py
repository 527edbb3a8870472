"""Slow reference implementations that share no code with the package."""

from __future__ import annotations

import itertools

import numpy as np


def clmul_mod(a: int, c: int, prim_poly: int, b: int) -> int:
    """Carry-less product of two field elements reduced by ``prim_poly``."""
    prod = 0
    for i in range(b):
        if (c >> i) & 1:
            prod ^= a << i
    for i in range(2 * b - 2, b - 1, -1):
        if (prod >> i) & 1:
            prod ^= prim_poly << (i - b)
    return prod


def gf2_solve(A: np.ndarray, y: np.ndarray):
    """Solve ``A x = y`` over GF(2) by Gaussian elimination.

    Returns ``(x, unique)`` with some solution ``x`` (or ``None`` if the
    system is inconsistent) and whether it is the only one.
    """
    A = np.array(A, dtype=np.uint8) & 1
    y = np.array(y, dtype=np.uint8) & 1
    m, n = A.shape
    M = np.concatenate([A, y[:, None]], axis=1)
    piv_cols = []
    row = 0
    for col in range(n):
        hits = [i for i in range(row, m) if M[i, col]]
        if not hits:
            continue
        M[[row, hits[0]]] = M[[hits[0], row]]
        for i in range(m):
            if i != row and M[i, col]:
                M[i] ^= M[row]
        piv_cols.append(col)
        row += 1
        if row == m:
            break
    if any(M[i, n] for i in range(row, m)):
        return None, False
    x = np.zeros(n, dtype=np.uint8)
    for i, col in enumerate(piv_cols):
        x[col] = M[i, n]
    return x, len(piv_cols) == n


def circulant(p: int, exps) -> np.ndarray:
    """Matrix of multiplication by ``sum(alpha^s)`` on length-``p`` vectors."""
    C = np.zeros((p, p), dtype=np.uint8)
    for s in exps:
        for i in range(p):
            C[(i + s) % p, i] ^= 1
    return C


def brute_fill(check, arr: np.ndarray, erased: np.ndarray, max_bits: int = 20):
    """Every 0/1 completion of the erased cells that satisfies ``check``."""
    cells = list(zip(*np.nonzero(erased)))
    if len(cells) > max_bits:
        raise ValueError("too many erasures for brute force")
    out = []
    for bits in itertools.product((0, 1), repeat=len(cells)):
        cand = np.array(arr, dtype=np.uint8, copy=True)
        for (u, v), bit in zip(cells, bits):
            cand[u, v] = bit
        if check(cand):
            out.append(cand)
    return out


def lines_even(arr: np.ndarray, slopes, ncols=None) -> bool:
    """Every line ``{(<u0 - s v>, v)}`` over the first ``ncols`` columns XORs to 0."""
    p = arr.shape[0]
    ncols = arr.shape[1] if ncols is None else ncols
    for s in slopes:
        for u0 in range(p):
            acc = 0
            for v in range(ncols):
                acc ^= int(arr[(u0 - s * v) % p, v])
            if acc:
                return False
    return True


def poly_mod2_divisible(v, gen) -> bool:
    """Binary polynomial ``v`` divisible by ``gen`` (coefficients low first)."""
    v = [int(x) & 1 for x in v]
    gen = list(gen)
    dg = len(gen) - 1
    for i in range(len(v) - 1, dg - 1, -1):
        if v[i]:
            for k, g in enumerate(gen):
                v[i - dg + k] ^= g
    return not any(v[:dg])
