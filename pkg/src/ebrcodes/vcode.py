"""The per-column cyclic code generated by ``g(x)(1 + x)``.

Every column of an EBR or EIP array is a codeword of this length-``p``
code. Data occupies positions ``0 .. k_local-1`` and the ``t+1`` parity
symbols sit at the bottom of the column.
"""

from __future__ import annotations

import itertools
import math
import warnings
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import BadParameters, LengthMismatch, Unrecoverable
from .gf import GF2, FieldTable, poly_divmod, poly_from_mask, poly_mul, poly_trim

# exhaustive weight enumeration is used up to this many information bits
ENUMERATION_BITS = 24
SUBSET_BUDGET = 2_000_000


class CyclicCode:
    """Cyclic code C(p, g(x)(1+x), q, d).

    ``g`` is a coefficient sequence (lowest degree first) or, for binary
    polynomials, an integer bitmask. ``d`` is computed unless supplied.
    """

    def __init__(self, p: int, field: FieldTable = GF2, g=(1,), d: int | None = None):
        if isinstance(g, int):
            g = poly_from_mask(g)
        g = poly_trim(g)
        if g == [0]:
            raise BadParameters("g(x) must be nonzero")
        if any(not 0 <= c < field.q for c in g):
            raise BadParameters("coefficients of g(x) must be field elements")
        xp1 = [1] + [0] * (p - 1) + [1]
        if poly_divmod(xp1, g, field)[1] != [0]:
            raise BadParameters(f"g(x)={g} does not divide 1+x^{p}")
        if np.bitwise_xor.reduce(np.array(g, dtype=np.uint8)) == 0:
            raise BadParameters("g(x) must be coprime with 1+x")
        self.p = p
        self.field = field
        self.g = tuple(g)
        self.gen = tuple(poly_mul(g, [1, 1], field))
        self.t = len(g) - 1
        self.k_local = p - self.t - 1
        if self.k_local < 1:
            raise BadParameters("vertical code has no information symbols")
        self.parity_matrix = self._parity_matrix()
        self.H_local = np.concatenate(
            [self.parity_matrix.T, np.eye(self.t + 1, dtype=np.uint8)], axis=1)
        self.H_local.setflags(write=False)
        if d is None:
            d = self._distance()
        elif self.g != (1,):
            warnings.warn(f"minimum distance d={d} taken from configuration, "
                          "not verified")
        self.d = d

    def __repr__(self):
        return (f"CyclicCode(p={self.p}, g={list(self.g)}, b={self.field.b}, "
                f"d={self.d})")

    def _parity_matrix(self) -> np.ndarray:
        # x^(t+1) x^i mod gen gives the parity of a unit vector once the
        # codeword is rotated back by t+1 places
        t1 = self.t + 1
        rows = np.zeros((self.k_local, t1), dtype=np.uint8)
        for i in range(self.k_local):
            mono = [0] * (i + t1) + [1]
            rem = poly_divmod(mono, self.gen, self.field)[1]
            rows[i, :len(rem)] = rem
        rows.setflags(write=False)
        return rows

    def _distance(self) -> int:
        if self.g == (1,):
            return 2
        bits = self.k_local * self.field.b
        if bits <= ENUMERATION_BITS:
            words = self.all_codewords()[1:]
            return int(np.count_nonzero(words, axis=1).min())
        # smallest set of linearly dependent columns of H_local
        for w in range(1, self.t + 3):
            if math.comb(self.p, w) > SUBSET_BUDGET:
                break
            for cols in itertools.combinations(range(self.p), w):
                if linalg.rank(self.H_local[:, cols], self.field) < w:
                    return w
        else:
            return self.t + 2
        raise BadParameters(
            "minimum distance too expensive to compute; pass d explicitly")

    @property
    def is_mds(self) -> bool:
        return self.d == self.t + 2

    def encode(self, data) -> np.ndarray:
        """Systematic codeword(s) for ``data`` of shape (..., k_local)."""
        data = np.asarray(data, dtype=np.uint8)
        if data.shape[-1] != self.k_local:
            raise LengthMismatch(
                f"expected {self.k_local} data symbols, got {data.shape[-1]}")
        flat = data.reshape(-1, self.k_local)
        parity = linalg.matmul(flat, self.parity_matrix, self.field)
        out = np.concatenate([flat, parity], axis=1)
        return out.reshape(data.shape[:-1] + (self.p,))

    def remainder(self, v) -> np.ndarray:
        """``v(x) mod gen(x)`` for each vector along the last axis."""
        rem = np.array(v, dtype=np.uint8, copy=True)
        if rem.shape[-1] != self.p:
            raise LengthMismatch(f"expected length {self.p}, got {rem.shape[-1]}")
        gen = np.array(self.gen, dtype=np.uint8)
        dg = len(gen) - 1
        table = self.field.mul_table
        for i in range(self.p - 1, dg - 1, -1):
            # gen is monic: the quotient digit is the current coefficient
            f = rem[..., i]
            if not f.any():
                continue
            if self.field.is_binary:
                rem[..., i - dg:i + 1] ^= f[..., None] * gen
            else:
                rem[..., i - dg:i + 1] ^= table[f[..., None], gen]
        return rem[..., :dg]

    def is_codeword(self, v):
        """True where ``v(x)`` is divisible by ``g(x)(1+x)``; broadcasts."""
        res = ~np.any(self.remainder(v), axis=-1)
        return bool(res) if res.ndim == 0 else res

    @lru_cache(maxsize=None)
    def _solver(self, erased: tuple):
        return linalg.erasure_solver(self.H_local, erased, self.field)

    def repair(self, column, erased) -> np.ndarray:
        """Fill the erased positions of ``column``.

        ``erased`` is a boolean mask of length ``p`` (or a collection of
        positions) shared by every vector in a batch. Raises
        :class:`Unrecoverable` if the erased symbols are not determined by
        the rest of the column.
        """
        column = np.asarray(column, dtype=np.uint8)
        if column.shape[-1] != self.p:
            raise LengthMismatch(f"expected length {self.p}, got {column.shape[-1]}")
        positions = _positions(erased, self.p)
        out = column.copy()
        if not positions:
            return out
        solver = self._solver(positions)
        if solver is None:
            raise Unrecoverable(
                f"{len(positions)} erasures at {list(positions)} exceed the "
                f"local capability (d={self.d}, burst {self.t + 1})")
        known = linalg.known_indices(self.p, positions)
        flat = out.reshape(-1, self.p)
        fill = linalg.matmul(flat[:, known], solver.T, self.field)
        flat[:, list(positions)] = fill
        return flat.reshape(out.shape)

    def can_repair(self, erased) -> bool:
        positions = _positions(erased, self.p)
        return not positions or self._solver(positions) is not None

    def is_burst(self, erased) -> bool:
        """Whether the erased positions form one cyclic run of length <= t+1."""
        positions = set(_positions(erased, self.p))
        if not positions:
            return True
        if len(positions) > self.t + 1:
            return False
        starts = [i for i in positions if (i - 1) % self.p not in positions]
        return len(starts) == 1

    def all_codewords(self) -> np.ndarray:
        """Every codeword, zero first; only for tiny codes."""
        q, k = self.field.q, self.k_local
        if k * self.field.b > ENUMERATION_BITS:
            raise BadParameters("too many codewords to enumerate")
        digits = np.indices((q,) * k).reshape(k, -1).T[:, ::-1]
        return self.encode(digits.astype(np.uint8))

    def min_weight_word(self) -> np.ndarray:
        """A nonzero codeword of weight ``d``."""
        if self.g == (1,):
            w = np.zeros(self.p, dtype=np.uint8)
            w[0] = w[-1] = 1
            return w
        if self.k_local * self.field.b <= ENUMERATION_BITS:
            words = self.all_codewords()[1:]
            wts = np.count_nonzero(words, axis=1)
            return words[int(np.argmin(wts))].copy()
        raise BadParameters("no minimum-weight search for this code size")


def _positions(erased, p: int) -> tuple:
    arr = np.asarray(erased)
    if arr.dtype == bool:
        if arr.shape != (p,):
            raise LengthMismatch(f"erasure mask must have length {p}")
        return tuple(int(i) for i in np.nonzero(arr)[0])
    return tuple(sorted({int(i) % p for i in np.ravel(arr)}))


def vertical_encode(data, code: CyclicCode) -> np.ndarray:
    return code.encode(data)


def vertical_repair(column, erased, code: CyclicCode) -> np.ndarray:
    return code.repair(column, erased)


def is_local_codeword(v, code: CyclicCode):
    return code.is_codeword(v)
