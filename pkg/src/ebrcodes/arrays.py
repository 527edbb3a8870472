"""Array containers and the decoding machinery shared by every code family.

Complete arrays are plain ``uint8`` ndarrays of shape ``(rows, cols)``
(optionally with leading batch axes). :class:`CodeArray` pairs symbols with
an erasure mask for the decoders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import BadParameters, BadShape, TooManyErasures
from .ring import SparsePoly, mod, mul_sparse, rotate, solve_chain

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def check_prime(p: int):
    if not is_prime(p) or p < 3:
        raise BadParameters(f"p must be an odd prime, got {p}")


@dataclass
class CodeArray:
    """Symbols plus a per-symbol erasure mask.

    ``symbols`` has shape ``(..., rows, cols)``; ``erased`` has shape
    ``(rows, cols)`` and applies to every array of a batch. Erased symbols
    are stored as zero.
    """

    symbols: np.ndarray
    erased: np.ndarray = None

    def __post_init__(self):
        self.symbols = np.array(self.symbols, dtype=np.uint8, copy=True)
        shape = self.symbols.shape[-2:]
        if self.erased is None:
            self.erased = np.zeros(shape, dtype=bool)
        self.erased = np.array(self.erased, dtype=bool, copy=True)
        if self.erased.shape != shape:
            raise BadShape(f"mask {self.erased.shape} does not match {shape}")
        self.symbols[..., self.erased] = 0

    @classmethod
    def from_rows(cls, rows) -> "CodeArray":
        """Build from nested lists where ``None`` marks an erasure."""
        mask = np.array([[x is None for x in row] for row in rows], dtype=bool)
        vals = np.array([[0 if x is None else x for x in row] for row in rows])
        return cls(vals, mask)

    @property
    def shape(self):
        return self.erased.shape

    @property
    def is_complete(self) -> bool:
        return not self.erased.any()

    def copy(self) -> "CodeArray":
        return CodeArray(self.symbols, self.erased)

    def erase_columns(self, cols) -> "CodeArray":
        out = self.copy()
        out.erased[:, list(cols)] = True
        out.symbols[..., out.erased] = 0
        return out

    def erase_rows(self, rows) -> "CodeArray":
        out = self.copy()
        out.erased[list(rows), :] = True
        out.symbols[..., out.erased] = 0
        return out

    def erase_cells(self, cells) -> "CodeArray":
        out = self.copy()
        for u, v in cells:
            out.erased[u, v] = True
        out.symbols[..., out.erased] = 0
        return out

    def erased_columns(self) -> list[int]:
        """Columns with every symbol erased."""
        return [int(v) for v in np.nonzero(self.erased.all(axis=0))[0]]

    def damaged_columns(self) -> list[int]:
        """Columns with at least one erased symbol."""
        return [int(v) for v in np.nonzero(self.erased.any(axis=0))[0]]


def as_code_array(arr) -> CodeArray:
    return arr if isinstance(arr, CodeArray) else CodeArray(arr)


def line_cells(slope, anchor: int, p: int) -> list[tuple[int, int]]:
    """Cells of a line in a p x p array.

    A finite slope ``i`` through ``(anchor, 0)`` is ``{(<anchor - i v>, v)}``;
    slope :data:`INF` is column ``anchor``.
    """
    if slope == INF:
        return [(u, mod(anchor, p)) for u in range(p)]
    return [(mod(anchor - slope * v, p), v) for v in range(p)]


def column(arr: np.ndarray, v: int) -> np.ndarray:
    return arr[..., :, v]


def slope_syndrome(arr: np.ndarray, j: int, ncols: int) -> np.ndarray:
    """``sum(alpha^(j u) c_u for u < ncols)``: coefficient ``i`` is the XOR of
    the slope-``j`` line through ``(i, 0)`` over the first ``ncols`` columns."""
    out = np.zeros(arr.shape[:-2] + (arr.shape[-2],), dtype=np.uint8)
    for u in range(ncols):
        out ^= rotate(column(arr, u), j * u)
    return out


@lru_cache(maxsize=None)
def locator(p: int, roots: tuple) -> tuple:
    """Coefficients ``g_0 .. g_rho-1`` of ``prod(x + alpha^i for i in roots)``
    as binary ring elements."""
    one = np.zeros(p, dtype=np.uint8)
    one[0] = 1
    coefs = [one]
    for i in roots:
        nxt = [np.zeros(p, dtype=np.uint8) for _ in range(len(coefs) + 1)]
        for k, c in enumerate(coefs):
            nxt[k + 1] ^= c
            nxt[k] ^= rotate(c, i)
        coefs = nxt
    return tuple(SparsePoly.from_dense(c) for c in coefs)


@dataclass
class DecodeStep:
    column: int
    locator: tuple
    combined: np.ndarray
    normalized: np.ndarray
    chain_exponents: tuple
    chain: list
    value: np.ndarray
    syndromes: list


@dataclass
class DecodeTrace:
    """Intermediate values of one column-erasure decode."""

    erased: tuple = ()
    syndromes: list = dc_field(default_factory=list)
    steps: list = dc_field(default_factory=list)

    def value(self, col: int) -> np.ndarray:
        for step in self.steps:
            if step.column == col:
                return step.value
        raise KeyError(col)


def solve_columns(syndromes, cols, p: int, trace: DecodeTrace | None = None,
                  counter=None) -> dict:
    """Recover erased columns from Vandermonde syndromes.

    ``syndromes[j] = sum(alpha^(j i) e_i for i in cols)`` for
    ``j < len(cols)``. Column ``i_0`` is isolated with the locator
    ``G(x) = prod(x + alpha^(i_s), s >= 1)``, the combination
    ``sum g_j S_j`` is rotated by ``-(rho-1) i_0`` and the remaining factor
    ``prod(1 + alpha^(i_s - i_0))`` is peeled off one recursion at a time.
    """
    cols = sorted(int(c) for c in cols)
    S = [np.array(s, dtype=np.uint8, copy=True) for s in syndromes[:len(cols)]]
    if trace is not None:
        trace.erased = tuple(cols)
        trace.syndromes = [s.copy() for s in S]
    out = {}
    while cols:
        rho = len(cols)
        i0 = cols[0]
        gs = locator(p, tuple(cols[1:]))
        combined = np.zeros_like(S[0])
        for gj, sj in zip(gs, S):
            combined ^= mul_sparse(gj, sj, counter=counter)
        normalized = rotate(combined, -(rho - 1) * i0)
        exps = tuple(mod(c - i0, p) for c in cols[1:])
        chain = []
        e = solve_chain(exps, normalized, counter=counter, steps=chain)
        out[i0] = e
        if trace is not None:
            trace.steps.append(DecodeStep(i0, gs, combined, normalized, exps,
                                          chain, e.copy(), [s.copy() for s in S]))
        for j in range(rho - 1):
            S[j] ^= rotate(e, j * i0)
        S = S[:rho - 1]
        cols = cols[1:]
    return out


class LinearSystemMixin:
    """Generic elimination over the full constraint system of a code.

    Subclasses provide ``constraint_matrix()`` whose null space is the code,
    with symbol ``(u, v)`` at flat index ``u * cols + v``.
    """

    def _constraint_cache(self):
        cached = getattr(self, "_cm", None)
        if cached is None:
            cached = self.constraint_matrix()
            cached.setflags(write=False)
            self._cm = cached
        return cached

    def _elimination_solver(self, unknown: tuple):
        cache = self.__dict__.setdefault("_solvers", {})
        if unknown not in cache:
            cache[unknown] = linalg.erasure_solver(
                self._constraint_cache(), unknown, self.field)
        return cache[unknown]

    def is_recoverable(self, mask: np.ndarray) -> bool:
        unknown = tuple(int(i) for i in np.flatnonzero(mask))
        return not unknown or self._elimination_solver(unknown) is not None

    def solve_by_elimination(self, arr: CodeArray) -> np.ndarray:
        """Fill every erasure of ``arr`` by solving the constraint system."""
        arr = as_code_array(arr)
        unknown = tuple(int(i) for i in np.flatnonzero(arr.erased))
        out = arr.symbols.copy()
        if not unknown:
            return out
        solver = self._elimination_solver(unknown)
        if solver is None:
            raise TooManyErasures(
                "erasure pattern is not uniquely decodable",
                arr.damaged_columns())
        n = arr.erased.size
        lead = out.shape[:-2]
        flat = out.reshape(-1, n)
        known = linalg.known_indices(n, unknown)
        flat[:, list(unknown)] = linalg.matmul(flat[:, known], solver.T, self.field)
        return flat.reshape(lead + arr.shape)


def local_constraints(vertical, rows: int, cols: int, col_list=None) -> list:
    """Rows of vertical parity checks for each listed column."""
    out = []
    H = vertical.H_local
    for v in (range(cols) if col_list is None else col_list):
        for l in range(H.shape[0]):
            row = np.zeros(rows * cols, dtype=np.uint8)
            for u in range(rows):
                row[u * cols + v] = H[l, u]
            out.append(row)
    return out


def repair_columns_locally(vertical, arr: CodeArray) -> tuple[np.ndarray, np.ndarray]:
    """First decoding phase: local repair of every partially erased column.

    Returns the updated symbols and a mask in which columns that could not
    be repaired locally are marked fully erased.
    """
    sym = arr.symbols.copy()
    mask = arr.erased.copy()
    for v in arr.damaged_columns():
        col_mask = mask[:, v]
        if col_mask.all():
            continue
        if vertical.can_repair(col_mask):
            sym[..., :, v] = vertical.repair(sym[..., :, v], col_mask)
            mask[:, v] = False
        else:
            mask[:, v] = True
            sym[..., :, v] = 0
    return sym, mask
