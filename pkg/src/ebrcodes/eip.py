"""Expanded Independent-Parity codes.

An EIP(p, r, q, g) codeword is a ``p x (p + r)`` array. The first ``p``
columns carry data, column ``p + s`` is the slope-``s`` parity
``sum(alpha^(s j) c_j)``, and every column lies in the vertical code. Each
parity column depends on the data through one rotation only, which is what
makes single-symbol updates cheap.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .arrays import (CodeArray, DecodeTrace, LinearSystemMixin, as_code_array,
                     check_prime, line_cells, local_constraints,
                     repair_columns_locally, slope_syndrome, solve_columns)
from .errors import (BadParameters, BadShape, NotACodeword, NotMDSWarning,
                     OutOfRange, TooManyErasures)
from .gf import GF2, FieldTable
from .ring import XorCounter, rotate
from .vcode import CyclicCode

# exhaustive MDS verification is attempted up to this prime
MDS_CHECK_MAX_P = 13


@dataclass
class UpdatePlan:
    """What a single-symbol write changes.

    ``touched`` counts parity symbols that flip: the vertical parities of
    the data column plus every nonzero symbol of the parity-column deltas.
    """

    column: int
    delta_column: np.ndarray
    parity_deltas: list
    touched: int

    @property
    def is_empty(self) -> bool:
        return not self.delta_column.any()


class EIPCode(LinearSystemMixin):
    kind = "EIP"

    def __init__(self, p: int, r: int, field: FieldTable = GF2, g=(1,),
                 d: int | None = None, mds: bool | None = None):
        check_prime(p)
        if not 1 <= r <= p:
            raise BadParameters(f"r must be in 1..{p}, got {r}")
        self.p = p
        self.r = r
        self.field = field
        self.vertical = g if isinstance(g, CyclicCode) else CyclicCode(p, field, g, d)
        self.rows = p
        self.cols = p + r
        self.data_cols = tuple(range(p))
        self.parity_cols = tuple(range(p, p + r))
        self._mds = mds

    def __repr__(self):
        return f"EIPCode(p={self.p}, r={self.r}, vertical={self.vertical})"

    @property
    def g(self):
        return self.vertical.g

    @property
    def t(self):
        return self.vertical.t

    @property
    def d(self):
        return self.vertical.d

    @property
    def k_local(self):
        return self.vertical.k_local

    @property
    def k_cols(self):
        return self.p

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def data_shape(self):
        return (self.k_local, self.p)

    @property
    def is_mds(self) -> bool | None:
        """Column-MDS status: known for ``r <= 3``, checked by exhaustive
        rank tests for small ``p``, otherwise ``None`` (unknown)."""
        if self._mds is None:
            if self.r <= 3:
                self._mds = True
            elif self.p <= MDS_CHECK_MAX_P:
                from .analysis import mds_columns_check
                self._mds = mds_columns_check(self)
        return self._mds

    # -- encoding ---------------------------------------------------------

    def _encode_columns(self, cols_data, counter=None) -> np.ndarray:
        """Vertical codewords for column data of shape (..., ncols, k_local)."""
        if counter is None or not self.field.is_binary:
            return self.vertical.encode(cols_data)
        # XOR-accumulate so that every symbol XOR is counted
        P = self.vertical.parity_matrix
        out = np.zeros(cols_data.shape[:-1] + (self.p,), dtype=np.uint8)
        out[..., :self.k_local] = cols_data
        for l in range(P.shape[1]):
            rows = np.nonzero(P[:, l])[0]
            acc = cols_data[..., rows[0]].copy()
            for i in rows[1:]:
                acc ^= cols_data[..., i]
            counter.add((len(rows) - 1) * int(np.prod(cols_data.shape[:-1])))
            out[..., self.k_local + l] = acc
        return out

    def _parity_columns(self, arr: np.ndarray, ncols: int, counter=None):
        for s in range(self.r):
            acc = arr[..., :, 0].copy()
            for j in range(1, ncols):
                acc ^= rotate(arr[..., :, j], s * j)
                if counter is not None:
                    counter.add(self.p)
            arr[..., :, self.p + s] = acc

    def encode(self, data, counter: XorCounter | None = None) -> np.ndarray:
        """Codeword(s) for ``data`` of shape ``(..., k_local, p)``."""
        data = np.asarray(data, dtype=np.uint8)
        if data.shape[-2:] != self.data_shape:
            raise BadShape(f"data must have shape {self.data_shape}, got {data.shape}")
        return self.encode_shortened(data, counter=counter)

    def encode_shortened(self, data, counter: XorCounter | None = None) -> np.ndarray:
        """Encode ``k <= p`` data columns, the remaining ones being zero.

        ``data`` has shape ``(..., k_local, k)``. With ``g = 1`` the counted
        cost is ``k(p-2) + r(k-1)p`` XORs: only nonzero columns are touched.
        """
        data = np.asarray(data, dtype=np.uint8)
        k = data.shape[-1]
        if data.shape[-2] != self.k_local or not 1 <= k <= self.p:
            raise BadShape(f"data must have shape ({self.k_local}, k) with 1 <= k <= {self.p}")
        arr = np.zeros(data.shape[:-2] + self.shape, dtype=np.uint8)
        enc = self._encode_columns(np.swapaxes(data, -1, -2), counter)
        arr[..., :, :k] = np.swapaxes(enc, -1, -2)
        self._parity_columns(arr, k, counter)
        return arr

    def data_region(self, arr) -> np.ndarray:
        return np.asarray(arr)[..., :self.k_local, :self.p].copy()

    # -- membership -------------------------------------------------------

    def parity_syndrome(self, arr: np.ndarray, s: int) -> np.ndarray:
        return slope_syndrome(arr, s, self.p) ^ arr[..., :, self.p + s]

    def is_codeword(self, arr):
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.shape[-2:] != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {arr.shape}")
        ok = np.all(self.vertical.is_codeword(np.swapaxes(arr, -1, -2)), axis=-1)
        for s in range(self.r):
            ok = ok & ~np.any(self.parity_syndrome(arr, s), axis=-1)
        return bool(ok) if np.ndim(ok) == 0 else ok

    # -- decoding ---------------------------------------------------------

    def decode(self, arr, trace: DecodeTrace | None = None) -> np.ndarray:
        """Local repair, then recovery of the wholly lost columns.

        Data-only losses use the syndrome decoder, parity-only losses are
        recomputed, and a single lost data column is read off any surviving
        parity. Other mixed patterns go through elimination on the full
        parity-check system.
        """
        arr = as_code_array(arr)
        if arr.shape != self.shape:
            raise BadShape(f"expected shape {self.shape}, got {arr.shape}")
        sym, mask = repair_columns_locally(self.vertical, arr)
        erased = [int(v) for v in np.nonzero(mask.all(axis=0))[0]]
        if len(erased) > self.r:
            raise TooManyErasures(
                f"{len(erased)} columns lost, at most {self.r} recoverable", erased)
        lost_data = [c for c in erased if c < self.p]
        lost_parity = [c for c in erased if c >= self.p]
        if lost_data and not lost_parity:
            S = [self.parity_syndrome(sym, s) for s in range(len(lost_data))]
            for c, e in solve_columns(S, lost_data, self.p, trace=trace).items():
                sym[..., :, c] = e
        elif len(lost_data) == 1:
            i = lost_data[0]
            s = next(s for s in range(self.r) if self.p + s not in lost_parity)
            # erased columns are zero, so the syndrome is alpha^(s i) c_i
            sym[..., :, i] = rotate(self.parity_syndrome(sym, s), -s * i)
        elif lost_data:
            if self.is_mds is not True:
                warnings.warn(
                    f"EIP({self.p},{self.r}) is not verified MDS; "
                    "decoding may fail", NotMDSWarning, stacklevel=2)
            return self.solve_by_elimination(CodeArray(sym, mask))
        if lost_parity:
            self._parity_columns(sym, self.p)
        return sym

    def repair(self, arr, trace=None) -> np.ndarray:
        return self.decode(arr, trace=trace)

    def constraint_matrix(self) -> np.ndarray:
        p, n = self.p, self.cols
        rows = local_constraints(self.vertical, p, n)
        for s in range(self.r):
            for u0 in range(p):
                row = np.zeros(p * n, dtype=np.uint8)
                for u, v in line_cells(s, u0, p):
                    row[u * n + v] = 1
                row[u0 * n + p + s] = 1
                rows.append(row)
        return np.array(rows, dtype=np.uint8)

    # -- independent-parity view ------------------------------------------

    def unit_code(self) -> "EIPCode":
        if self.g == (1,):
            return self
        return EIPCode(self.p, self.r, self.field)

    def to_ip(self, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.uint8)
        if not np.all(self.unit_code().is_codeword(arr)):
            raise NotACodeword(f"array is not in EIP({self.p},{self.r},q,1)")
        return to_ip(arr)

    def from_ip(self, ip) -> np.ndarray:
        ip = np.asarray(ip, dtype=np.uint8)
        if not np.all(is_ip_codeword(ip, self.r)):
            raise NotACodeword(f"array is not in IP({self.p},{self.r},q)")
        return from_ip(ip)

    # -- updates ----------------------------------------------------------

    def update(self, arr: np.ndarray, i: int, j: int, value: int) -> UpdatePlan:
        """Write ``value`` at data position ``(i, j)`` of ``arr`` in place."""
        if not (0 <= i < self.k_local and 0 <= j < self.p):
            raise OutOfRange(f"({i}, {j}) is outside the {self.data_shape} data region")
        unit = np.zeros(self.k_local, dtype=np.uint8)
        unit[i] = arr[i, j] ^ value
        delta = self.vertical.encode(unit)
        parity = [(self.p + s, rotate(delta, s * j)) for s in range(self.r)]
        if delta.any():
            arr[:, j] ^= delta
            for c, dv in parity:
                arr[:, c] ^= dv
        w = int(np.count_nonzero(delta))
        touched = (w - 1 if w else 0) + self.r * w
        return UpdatePlan(j, delta, parity, touched)


def to_ip(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.uint8)
    return arr[..., :-1, :] ^ arr[..., -1:, :]


def from_ip(ip: np.ndarray) -> np.ndarray:
    ip = np.asarray(ip, dtype=np.uint8)
    last = np.bitwise_xor.reduce(ip, axis=-2)
    return np.concatenate([ip ^ last[..., None, :], last[..., None, :]], axis=-2)


def ip_line_parities(ip: np.ndarray, s: int) -> np.ndarray:
    """XOR of each slope-``s`` line (zero row appended) with its parity
    symbol in column ``p + s``; one value per line."""
    ip = np.asarray(ip, dtype=np.uint8)
    p = ip.shape[-2] + 1
    pad = np.zeros(ip.shape[:-2] + (1, ip.shape[-1]), np.uint8)
    padded = np.concatenate([ip, pad], axis=-2)
    return slope_syndrome(padded, s, p) ^ padded[..., :, p + s]


def is_ip_codeword(ip: np.ndarray, r: int):
    """For every slope ``s < r``, the lines combined with their parity column
    all have the same parity (all even or all odd)."""
    ip = np.asarray(ip, dtype=np.uint8)
    p = ip.shape[-2] + 1
    if ip.shape[-1] != p + r:
        raise BadShape(f"IP arrays have shape ({p - 1}, {p + r}), got {ip.shape}")
    ok = True
    for s in range(r):
        par = ip_line_parities(ip, s)
        ok = ok & np.all(par == par[..., :1], axis=-1)
    return ok


# Operation-style aliases

def eip_encode(data, code: EIPCode, counter=None) -> np.ndarray:
    return code.encode(data, counter=counter)


def eip_decode(arr, code: EIPCode) -> np.ndarray:
    return code.decode(arr)


def eip_update(arr, i: int, j: int, value: int, code: EIPCode) -> UpdatePlan:
    return code.update(arr, i, j, value)


def eip_encode_shortened(data, code: EIPCode) -> tuple[np.ndarray, int]:
    counter = XorCounter()
    arr = code.encode_shortened(data, counter=counter)
    return arr, counter.xors
