"""Expanded Blaum-Roth codes and the BR / BRVP arrays derived from them.

An EBR(p, r, q, g) codeword is a ``p x p`` array whose columns lie in the
vertical code generated by ``g(x)(1+x)`` and whose lines of slope
``0 .. r-1`` all have zero XOR. Classic (p-1) x p Blaum-Roth arrays are only
ever handled through the column transform :func:`to_br` / :func:`from_br`.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .arrays import (CodeArray, DecodeTrace, LinearSystemMixin, as_code_array,
                     check_prime, line_cells, local_constraints,
                     repair_columns_locally, slope_syndrome, solve_columns)
from .errors import BadParameters, BadShape, NotACodeword, TooManyErasures
from .gf import GF2, FieldTable
from .vcode import CyclicCode


class EBRCode(LinearSystemMixin):
    """EBR(p, r, q, g(x)).

    Parity columns default to the last ``r``; any ``r`` distinct columns
    may be chosen instead. Data sits in the first ``k_local`` rows of the
    remaining columns.
    """

    kind = "EBR"

    def __init__(self, p: int, r: int, field: FieldTable = GF2, g=(1,),
                 d: int | None = None, parity_cols=None):
        check_prime(p)
        if not 1 <= r <= p - 1:
            raise BadParameters(f"r must be in 1..{p - 1}, got {r}")
        self.p = p
        self.r = r
        self.field = field
        self.vertical = g if isinstance(g, CyclicCode) else CyclicCode(p, field, g, d)
        if parity_cols is None:
            parity_cols = range(p - r, p)
        self.parity_cols = tuple(sorted(int(c) for c in parity_cols))
        if len(set(self.parity_cols)) != r or not all(0 <= c < p for c in self.parity_cols):
            raise BadParameters(f"need {r} distinct parity columns in 0..{p - 1}")
        self.data_cols = tuple(c for c in range(p) if c not in self.parity_cols)
        self.rows = p
        self.cols = p

    def __repr__(self):
        return f"{self.kind}Code(p={self.p}, r={self.r}, vertical={self.vertical})"

    @property
    def g(self):
        return self.vertical.g

    @property
    def t(self) -> int:
        return self.vertical.t

    @property
    def d(self) -> int:
        return self.vertical.d

    @property
    def k_local(self) -> int:
        return self.vertical.k_local

    @property
    def k_cols(self) -> int:
        return self.p - self.r

    @property
    def data_shape(self) -> tuple:
        return (self.k_local, self.k_cols)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    # -- encoding ---------------------------------------------------------

    def encode(self, data, counter=None) -> np.ndarray:
        """Codeword(s) for ``data`` of shape ``(..., k_local, k_cols)``.

        Data columns are encoded vertically; the parity columns are then
        produced by the column-erasure decoder.
        """
        data = np.asarray(data, dtype=np.uint8)
        if data.shape[-2:] != self.data_shape:
            raise BadShape(f"data must have shape {self.data_shape}, got {data.shape}")
        arr = np.zeros(data.shape[:-2] + self.shape, dtype=np.uint8)
        cols_enc = self.vertical.encode(np.swapaxes(data, -1, -2))
        arr[..., :, list(self.data_cols)] = np.swapaxes(cols_enc, -1, -2)
        self._fill_columns(arr, self.parity_cols, counter=counter)
        return arr

    def data_region(self, arr) -> np.ndarray:
        arr = np.asarray(arr)
        return arr[..., :self.k_local, :][..., list(self.data_cols)].copy()

    # -- membership -------------------------------------------------------

    def is_codeword(self, arr):
        """Column membership plus even parity on slopes ``0 .. r-1``."""
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.shape[-2:] != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {arr.shape}")
        ok = np.all(self.vertical.is_codeword(np.swapaxes(arr, -1, -2)), axis=-1)
        for j in range(self.r):
            ok = ok & ~np.any(slope_syndrome(arr, j, self.p), axis=-1)
        return bool(ok) if np.ndim(ok) == 0 else ok

    # -- decoding ---------------------------------------------------------

    def syndromes(self, arr: np.ndarray, count: int) -> list:
        return [slope_syndrome(arr, j, self.p) for j in range(count)]

    def _fill_columns(self, arr: np.ndarray, cols, trace=None, counter=None):
        # arr holds zeros in the columns being solved for
        cols = list(cols)
        if not cols:
            return
        S = self.syndromes(arr, len(cols))
        for c, e in solve_columns(S, cols, self.p, trace=trace, counter=counter).items():
            arr[..., :, c] = e

    def decode_columns(self, arr, trace: DecodeTrace | None = None,
                       counter=None) -> np.ndarray:
        """Recover up to ``r`` wholly erased columns.

        Pass a :class:`DecodeTrace` to capture syndromes, locator
        coefficients and every recovered column.
        """
        arr = as_code_array(arr)
        if arr.shape != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {arr.shape}")
        erased = arr.erased_columns()
        if set(arr.damaged_columns()) != set(erased):
            raise BadShape("decode_columns expects whole-column erasures; use repair")
        if len(erased) > self.r:
            raise TooManyErasures(
                f"{len(erased)} erased columns exceed r={self.r}", erased)
        out = arr.symbols.copy()
        self._fill_columns(out, erased, trace=trace, counter=counter)
        return out

    def repair(self, arr, trace: DecodeTrace | None = None) -> np.ndarray:
        """Local repair of every column where possible, then global decoding
        of the columns that remain."""
        arr = as_code_array(arr)
        sym, mask = repair_columns_locally(self.vertical, arr)
        return self.decode_columns(CodeArray(sym, mask), trace=trace)

    # -- linear-system view -----------------------------------------------

    def constraint_matrix(self) -> np.ndarray:
        """Parity checks of the whole array, symbol ``(u, v)`` at ``u*p + v``."""
        p = self.p
        rows = local_constraints(self.vertical, p, p)
        for j in range(self.r):
            for u0 in range(p):
                row = np.zeros(p * p, dtype=np.uint8)
                for u, v in line_cells(j, u0, p):
                    row[u * p + v] = 1
                rows.append(row)
        return np.array(rows, dtype=np.uint8)

    # -- Blaum-Roth view --------------------------------------------------

    def unit_code(self) -> "EBRCode":
        """The same code with ``g = 1``; every EBR codeword belongs to it."""
        if self.g == (1,):
            return self
        return EBRCode(self.p, self.r, self.field, parity_cols=self.parity_cols)

    def to_br(self, arr) -> np.ndarray:
        """Drop the last row after XOR-ing it into every other row."""
        arr = np.asarray(arr, dtype=np.uint8)
        if not np.all(self.unit_code().is_codeword(arr)):
            raise NotACodeword(f"array is not in EBR({self.p},{self.r},q,1)")
        return to_br(arr)

    def from_br(self, br) -> np.ndarray:
        br = np.asarray(br, dtype=np.uint8)
        if not np.all(is_br_codeword(br, self.r)):
            raise NotACodeword(f"array is not in BR({self.p},{self.r},q)")
        return from_br(br)

    def br_encode(self, data) -> np.ndarray:
        """Systematic BR(p, r, q) array for data of shape ``(..., p-1, p-r)``."""
        unit = self.unit_code()
        data = np.asarray(data, dtype=np.uint8)
        if data.shape[-2:] != (self.p - 1, self.k_cols):
            raise BadShape(f"BR data must have shape {(self.p - 1, self.k_cols)}")
        # undo the transform on the data columns, then encode as EBR(p,r,q,1)
        last = np.bitwise_xor.reduce(data, axis=-2)
        ebr_data = data ^ last[..., None, :]
        return to_br(unit.encode(ebr_data))


def to_br(arr: np.ndarray) -> np.ndarray:
    """Column transform into a (p-1) x p array; no membership check."""
    arr = np.asarray(arr, dtype=np.uint8)
    return arr[..., :-1, :] ^ arr[..., -1:, :]


def from_br(br: np.ndarray) -> np.ndarray:
    """Inverse of :func:`to_br`: the dropped row is the column parity."""
    br = np.asarray(br, dtype=np.uint8)
    last = np.bitwise_xor.reduce(br, axis=-2)
    top = br ^ last[..., None, :]
    return np.concatenate([top, last[..., None, :]], axis=-2)


def is_br_codeword(br: np.ndarray, r: int):
    """Even parity on slopes ``0 .. r-1`` once a zero row is appended."""
    br = np.asarray(br, dtype=np.uint8)
    p = br.shape[-1]
    if br.shape[-2] != p - 1:
        raise BadShape(f"BR arrays have {p - 1} rows, got {br.shape[-2]}")
    padded = np.concatenate([br, np.zeros(br.shape[:-2] + (1, p), np.uint8)], axis=-2)
    ok = True
    for j in range(r):
        ok = ok & ~np.any(slope_syndrome(padded, j, p), axis=-1)
    return ok


class BRVPCode(LinearSystemMixin):
    """BR(p, r, q) rows plus a final row holding the XOR of the rows above.

    Kept as a distance baseline: the parity row gives each column even
    weight without the extra structure of an EBR column.
    """

    kind = "BRVP"

    def __init__(self, p: int, r: int, field: FieldTable = GF2):
        check_prime(p)
        self.p = p
        self.r = r
        self.field = field
        self.ebr = EBRCode(p, r, field)
        self.rows = p
        self.cols = p

    def __repr__(self):
        return f"BRVPCode(p={self.p}, r={self.r}, b={self.field.b})"

    @property
    def shape(self):
        return (self.p, self.p)

    @property
    def data_shape(self):
        return (self.p - 1, self.p - self.r)

    def encode(self, data) -> np.ndarray:
        br = self.ebr.br_encode(data)
        last = np.bitwise_xor.reduce(br, axis=-2)
        return np.concatenate([br, last[..., None, :]], axis=-2)

    def is_codeword(self, arr):
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.shape[-2:] != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {arr.shape}")
        ok = is_br_codeword(arr[..., :-1, :], self.r)
        ok = ok & ~np.any(np.bitwise_xor.reduce(arr, axis=-2), axis=-1)
        return bool(ok) if np.ndim(ok) == 0 else ok

    def constraint_matrix(self) -> np.ndarray:
        p = self.p
        rows = []
        for v in range(p):
            row = np.zeros(p * p, dtype=np.uint8)
            row[v::p] = 1
            rows.append(row)
        for j in range(self.r):
            for u0 in range(p):
                row = np.zeros(p * p, dtype=np.uint8)
                for u, v in line_cells(j, u0, p):
                    if u != p - 1:
                        row[u * p + v] = 1
                rows.append(row)
        return np.array(rows, dtype=np.uint8)


def generator_basis(code) -> np.ndarray:
    """Basis rows (flattened arrays) of the code, from its constraint matrix."""
    return linalg.nullspace(code.constraint_matrix(), code.field)


# Operation-style aliases

def ebr_encode(data, code: EBRCode) -> np.ndarray:
    return code.encode(data)


def is_ebr_codeword(arr, code: EBRCode):
    return code.is_codeword(arr)


def ebr_decode_columns(arr, code: EBRCode, trace: DecodeTrace | None = None) -> np.ndarray:
    return code.decode_columns(arr, trace=trace)


def ebr_repair(arr, code: EBRCode) -> np.ndarray:
    return code.repair(arr)


def brvp_encode(data, code: BRVPCode) -> np.ndarray:
    return code.encode(data)


def brvp_check(arr, code: BRVPCode):
    return code.is_codeword(arr)
