"""Punctured codes: EBR/EIP arrays with the last ``t+1`` rows never written.

The deleted rows are exactly the vertical parities, so a surviving column
is re-extended by systematic vertical encoding and the full code's decoder
does the rest.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import geometry
from .arrays import CodeArray, as_code_array
from .ebr import generator_basis
from .errors import BadParameters, BadShape, NotACodeword
from .gf import FieldTable


class PuncturedCode:
    """PEBR or PEIP view of an :class:`~ebrcodes.ebr.EBRCode` or
    :class:`~ebrcodes.eip.EIPCode`."""

    def __init__(self, base):
        self.base = base
        self.kind = "P" + base.kind
        self.p = base.p
        self.r = base.r
        self.field = base.field
        self.vertical = base.vertical
        self.rows = base.k_local
        self.cols = base.cols

    def __repr__(self):
        return f"PuncturedCode({self.base!r})"

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def data_shape(self):
        return self.base.data_shape

    @property
    def g(self):
        return self.base.g

    def encode(self, data) -> np.ndarray:
        return self.base.encode(data)[..., :self.rows, :]

    def puncture(self, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.uint8)
        if not np.all(self.base.is_codeword(arr)):
            raise NotACodeword(f"array is not a codeword of {self.base!r}")
        return arr[..., :self.rows, :].copy()

    def unpuncture(self, parr, mark_deleted_rows: bool = False) -> CodeArray:
        """Re-embed into the full array.

        Complete columns are re-extended by vertical encoding; columns with
        erasures keep them and get their deleted rows marked erased too. With
        ``mark_deleted_rows`` every column is left unextended instead.
        """
        parr = as_code_array(parr)
        if parr.shape != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {parr.shape}")
        full_shape = parr.symbols.shape[:-2] + self.base.shape
        sym = np.zeros(full_shape, dtype=np.uint8)
        sym[..., :self.rows, :] = parr.symbols
        mask = np.ones(self.base.shape, dtype=bool)
        mask[:self.rows, :] = parr.erased
        if not mark_deleted_rows:
            intact = [v for v in range(self.cols) if not parr.erased[:, v].any()]
            if intact:
                cols = np.swapaxes(parr.symbols[..., :, intact], -1, -2)
                sym[..., :, intact] = np.swapaxes(self.vertical.encode(cols), -1, -2)
                mask[:, intact] = False
        return CodeArray(sym, mask)

    def is_codeword(self, parr):
        full = self.unpuncture(parr).symbols
        return self.base.is_codeword(full)

    def decode(self, parr, trace=None) -> np.ndarray:
        """Fill erasures of a punctured array through the full code."""
        return self.base.repair(self.unpuncture(parr), trace=trace)[..., :self.rows, :]

    def repair(self, parr, trace=None) -> np.ndarray:
        return self.decode(parr, trace=trace)

    def recover_lines(self, parr, lines) -> np.ndarray:
        """Recover erased lines (slope, anchor on the full ``p x p`` grid) of a
        PEBR(p, r, q, 1) array by treating the unwritten rows as erasures.

        The unwritten row is itself a slope-0 line, so ``r`` horizontal lines
        are only recoverable when one of them is that row; any other slope
        works for up to ``r`` lines.
        """
        if self.base.kind != "EBR":
            raise BadParameters("line recovery is defined for PEBR codes only")
        parr = as_code_array(parr)
        cells = [(u, v) for line in lines for u, v in line.cells(self.p) if u < self.rows]
        parr = parr.erase_cells(cells)
        full = self.unpuncture(parr, mark_deleted_rows=True)
        return geometry.recover_lines(full, lines, self.base)[..., :self.rows, :]

    def generator_matrix(self) -> np.ndarray:
        """Basis of the punctured code, each row a flattened array."""
        basis = generator_basis(self.base).reshape((-1,) + self.base.shape)
        return basis[:, :self.rows, :].reshape(len(basis), -1)


def puncture(arr, code: PuncturedCode) -> np.ndarray:
    return code.puncture(arr)


def unpuncture(parr, code: PuncturedCode, mark_deleted_rows: bool = False) -> CodeArray:
    return code.unpuncture(parr, mark_deleted_rows)


def _all_codewords(code) -> np.ndarray:
    basis = code.generator_matrix()
    k = len(basis)
    if k > 20:
        raise BadParameters(f"{2 ** k} codewords is too many to enumerate")
    coeffs = ((np.arange(1 << k)[:, None] >> np.arange(k)) & 1).astype(np.int64)
    return ((coeffs @ basis.astype(np.int64)) & 1).astype(np.uint8)


def rs_equivalence_failures(code: PuncturedCode, row_permutation, prim_poly: int,
                            sign: int = -1) -> int:
    """Number of codewords whose GF(8) reading is not a codeword of the
    Reed-Solomon code with roots ``1, beta^(sign), .., beta^(sign (r-1))``.

    Row ``k`` of the permuted array is row ``row_permutation[k]`` of the
    original; bit ``k`` of a column symbol is the coefficient of ``beta^k``.
    """
    if code.p != 7 or code.rows != 3 or code.field.b != 1 or code.base.kind != "EBR":
        raise BadParameters("the check applies to binary PEBR(7, r, 2, g) with deg g = 3")
    perm = [int(i) for i in row_permutation]
    if sorted(perm) != [0, 1, 2]:
        raise BadParameters(f"{perm} is not a permutation of the three rows")
    gf8 = FieldTable(3, prim_poly)
    words = _all_codewords(code).reshape(-1, code.rows, code.cols)[:, perm, :]
    symbols = (words * (1 << np.arange(3))[None, :, None]).sum(axis=1)
    ok = np.ones(len(symbols), dtype=bool)
    for j in range(code.r):
        x = gf8.power(sign * j)
        acc = np.zeros(len(symbols), dtype=np.uint8)
        for v in range(code.cols):
            acc ^= gf8.mul_table[gf8.pow(x, v)][symbols[:, v]]
        ok &= acc == 0
    return int((~ok).sum())


def rs_equivalence_check(code: PuncturedCode, row_permutation, prim_poly: int,
                         sign: int = -1) -> bool:
    return rs_equivalence_failures(code, row_permutation, prim_poly, sign) == 0


def permutations_passing(code: PuncturedCode, prim_poly: int, sign: int = -1) -> list:
    return [perm for perm in itertools.permutations(range(3))
            if rs_equivalence_check(code, perm, prim_poly, sign)]
