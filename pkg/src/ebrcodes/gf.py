"""Arithmetic in GF(2^b), 1 <= b <= 8, via log/antilog tables.

Elements are the integers ``0 .. 2^b - 1`` read as polynomials in the
primitive element ``beta`` (bit ``i`` is the coefficient of ``beta^i``).
Addition is XOR and needs no table; everything else goes through
:class:`FieldTable`.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameters, DivisionByZero, NonPrimitivePolynomial

# bit i = coefficient of x^i, including the leading x^b term
DEFAULT_PRIMITIVE = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


class FieldTable:
    """Immutable GF(2^b) context.

    ``log[x]`` is the discrete log of ``x`` to base ``beta`` (``-1`` for 0)
    and ``antilog[k] = beta^k``; ``antilog`` is stored twice over so that
    ``antilog[log[a] + log[c]]`` never needs a reduction.
    """

    def __init__(self, b: int, prim_poly: int | None = None):
        if not 1 <= b <= 8:
            raise BadParameters(f"bit-width must be in 1..8, got {b}")
        if prim_poly is None:
            prim_poly = DEFAULT_PRIMITIVE[b]
        if prim_poly >> b != 1:
            raise NonPrimitivePolynomial(
                f"polynomial {prim_poly:#x} does not have degree {b}")
        self.b = b
        self.prim_poly = prim_poly
        self.q = 1 << b
        n = self.q - 1

        antilog = np.zeros(2 * n, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for k in range(n):
            if log[x] != -1:
                raise NonPrimitivePolynomial(
                    f"{prim_poly:#x}: cycle of beta closes after {k} steps, "
                    f"expected {n}")
            antilog[k] = x
            log[x] = k
            x <<= 1
            if x & self.q:
                x ^= prim_poly
        if x != 1:
            raise NonPrimitivePolynomial(f"{prim_poly:#x} is not primitive")
        antilog[n:] = antilog[:n]
        self.log = log
        self.antilog = antilog

        table = np.zeros((self.q, self.q), dtype=np.uint8)
        nz = np.arange(1, self.q)
        table[1:, 1:] = antilog[log[nz][:, None] + log[nz][None, :]]
        self.mul_table = table
        inv = np.zeros(self.q, dtype=np.uint8)
        inv[1:] = antilog[(n - log[nz]) % n]
        self.inv_table = inv
        for arr in (self.log, self.antilog, self.mul_table, self.inv_table):
            arr.setflags(write=False)

    def __repr__(self):
        return f"FieldTable(b={self.b}, prim_poly={self.prim_poly:#x})"

    def __eq__(self, other):
        return (isinstance(other, FieldTable) and self.b == other.b
                and self.prim_poly == other.prim_poly)

    def __hash__(self):
        return hash((self.b, self.prim_poly))

    @property
    def is_binary(self) -> bool:
        return self.b == 1

    def mul(self, a, c):
        """Product of field elements; works elementwise on arrays."""
        if self.b == 1:
            return a & c
        if np.isscalar(a) and np.isscalar(c):
            return int(self.mul_table[a, c])
        return self.mul_table[a, c]

    def inv(self, a):
        if np.isscalar(a):
            if a == 0:
                raise DivisionByZero("0 has no inverse")
            return int(self.inv_table[a])
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("0 has no inverse")
        return self.inv_table[a]

    def div(self, a, c):
        return self.mul(a, self.inv(c))

    def power(self, k: int) -> int:
        """``beta^k`` for any integer ``k``."""
        return int(self.antilog[k % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("0 has no inverse")
            return 0
        return self.power(int(self.log[a]) * e)

    def scale(self, a: int, v: np.ndarray) -> np.ndarray:
        """``a * v`` for a scalar ``a`` and an array ``v``."""
        if a == 1:
            return v.copy()
        if a == 0:
            return np.zeros_like(v)
        if self.b == 1:
            return v & 1
        return self.mul_table[a][v]


def field_new(b: int, prim_poly: int | None = None) -> FieldTable:
    """Build the tables for GF(2^b) generated by ``prim_poly``."""
    return FieldTable(b, prim_poly)


GF2 = FieldTable(1)


# Polynomials over GF(2^b) are coefficient sequences, lowest degree first.

def poly_trim(a) -> list[int]:
    a = [int(x) for x in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, c, field: FieldTable) -> list[int]:
    a, c = poly_trim(a), poly_trim(c)
    out = [0] * (len(a) + len(c) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for k, y in enumerate(c):
            out[i + k] ^= field.mul(x, y)
    return poly_trim(out)


def poly_divmod(a, m, field: FieldTable) -> tuple[list[int], list[int]]:
    a, m = poly_trim(a), poly_trim(m)
    if m == [0]:
        raise DivisionByZero("division by the zero polynomial")
    dm = len(m) - 1
    lead_inv = field.inv(m[-1])
    rem = list(a)
    quot = [0] * max(1, len(a) - dm)
    for i in range(len(a) - 1, dm - 1, -1):
        coef = rem[i]
        if not coef:
            continue
        f = field.mul(coef, lead_inv)
        quot[i - dm] = f
        for k, y in enumerate(m):
            rem[i - dm + k] ^= field.mul(f, y)
    return poly_trim(quot), poly_trim(rem[:dm] if dm else [0])


def poly_eval(a, x: int, field: FieldTable) -> int:
    acc = 0
    for coef in reversed(list(a)):
        acc = field.mul(acc, x) ^ int(coef)
    return acc


def poly_from_mask(mask: int) -> list[int]:
    """Binary polynomial from a bitmask (bit i = coefficient of x^i)."""
    if mask <= 0:
        raise BadParameters("polynomial mask must be positive")
    return [(mask >> i) & 1 for i in range(mask.bit_length())]
