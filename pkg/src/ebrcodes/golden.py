"""Reference arrays used by the test-suite and the ``paper-golden`` report.

Binary arrays are written one row per string. ``_`` marks an erased symbol.
Arrays over GF(8) list each entry as a power of ``beta`` (``b3`` is
``beta^3``, ``1`` is the unit, ``0`` is zero) with ``beta`` a root of
``1 + x + x^3``.
"""

from __future__ import annotations

import numpy as np

from .arrays import CodeArray
from .gf import FieldTable


def bits(*rows: str) -> np.ndarray:
    return np.array([[int(ch) for ch in row] for row in rows], dtype=np.uint8)


def erased_bits(*rows: str) -> CodeArray:
    return CodeArray.from_rows([[None if ch == "_" else int(ch) for ch in row]
                                for row in rows])


def powers(field: FieldTable, *rows: str) -> np.ndarray:
    def elem(tok: str) -> int:
        if tok == "0":
            return 0
        if tok == "1":
            return 1
        return field.power(int(tok[1:]))
    return np.array([[elem(tok) for tok in row.split()] for row in rows],
                    dtype=np.uint8)


# EBR(5,3,2,1) codeword and its Blaum-Roth image
EBR_5_3 = bits("10010", "11101", "01100", "01100", "01111")
EBR_5_3_AS_BR = bits("11101", "10010", "00011", "00011")

# a BR(5,3,2) array shown on its own
BR_5_3 = bits("10001", "11101", "01001", "01001")

# two codewords of EBR(7,3,2,1+x+x^3); the second has weight 16
G_HAMMING = 0b1011
EBR_7_3_H = bits("1010101", "1110001", "0110011", "0100100",
                 "1000010", "0010111", "1100110")
EBR_7_3_H_LIGHT = bits("0000011", "0001100", "0001010", "0001111",
                       "0000110", "0000101", "0001001")

# mixed erasures in EBR_7_3_H: columns 1, 3, 6 gone, column 2 holds the
# wrap-around burst {5, 6, 0, 1}, column 5 the burst {2, 3, 4, 5}
EBR_7_3_H_ERASED = erased_bits("____10_", "1____0_", "__1_0__", "0_0____",
                               "1_0_0__", "____1__", "1____1_")
# columns after the local phase
EBR_7_3_H_LOCAL = {0: bits("1100101")[0], 2: bits("1110010")[0],
                   4: bits("1001011")[0], 5: bits("0010111")[0]}
# intermediate ring values of the global phase, as exponent lists
EBR_7_3_H_TRACE = {
    "S": [(0, 3, 5, 6), (1, 2, 3, 6), (0, 1, 4, 6)],
    "G": [(2,), (3, 6), (0,)],
    "combined": (0, 1, 2, 5),
    "normalized": (0, 3, 5, 6),
    "chain_first": (0, 2, 3, 4),
    "e": {1: (1, 2, 3, 6), 3: (), 6: (0, 1, 2, 5)},
    "S_after_first": [(0, 1, 2, 5), (0, 1, 4, 6)],
    "G_second": [(6,), (0,)],
}

# EBR(7,3,8,beta+x)
G_GF8 = (2, 1)  # beta + x with beta = 0b010


def ebr_7_3_gf8(field: FieldTable) -> np.ndarray:
    return powers(field,
                  "0 b4 1 0 1 b1 b2",
                  "b5 b6 b5 b4 b1 b6 b2",
                  "b5 b5 b4 0 b1 b3 b5",
                  "b2 b4 0 b2 0 b4 0",
                  "b2 b4 b1 b3 b4 1 b2",
                  "b3 b4 b4 b1 1 b4 b4",
                  "b3 b1 b2 b3 b4 b6 b6")


# EIP(5,3,2,1) and its independent-parity image
EIP_5_3 = bits("10011100", "01011100", "00001111", "11011001", "00010110")
EIP_5_3_AS_IP = bits("10001010", "01001010", "00011001", "11001111")
IP_5_3 = bits("10011111", "01011110", "00001111", "11011011")

# EIP(7,3,2,1+x+x^3) before and after an update of symbol (2, 1)
EIP_7_3_H = bits("1001001100", "1100101000", "1110111001", "0101100100",
                 "0010010001", "1011011101", "0111110101")
EIP_7_3_H_UPDATED = bits("1001001111", "1100101001", "1010111101", "0101100110",
                         "0110010100", "1111011011", "0011110010")
EIP_7_3_H_DELTA = bits("0010111")[0]

# vertical-parity baseline arrays
BRVP_7_3 = bits("0111010", "0010010", "0010100", "0001010",
                "1100110", "0101000", "1111000")
BRVP_7_4_LIGHT = bits("0000011", "0000110", "0000000", "0100100",
                      "0000000", "0010001", "0110000")
EBR_7_4_LIGHT = bits("0000101", "0000000", "0001100", "0000110",
                     "0000000", "0010100", "0011011")

# four written rows of an EBR(5,2,2,1) codeword whose last row is 01010,
# and the systematic BR(5,2,2) array built from the same 4 x 3 data block;
# the slope-1 lines through rows 1 and 3 are the erasure scenario
PEBR_5_2 = bits("11101", "10111", "01100", "01100")
PEBR_5_2_LAST_ROW = bits("01010")[0]
BR_5_2 = bits("11101", "10111", "01111", "01111")
PEBR_5_2_LINES = (1, 3)

# cells of the slope-1 line through (1, 0) for p = 5
LINE_5_SLOPE1_ROW1 = [(1, 0), (0, 1), (4, 2), (3, 3), (2, 4)]


def distance_witness(p: int, r: int) -> np.ndarray | None:
    """A codeword of EBR(p, r, 2, 1) with weight 2(r+1), for the regimes
    where an explicit construction is known."""
    w = np.zeros((p, p), dtype=np.uint8)
    if r == p - 1:
        for i in range(p):
            w[i, i] = w[i, (i + 1) % p] = 1
    elif r == p - 2:
        half = pow(2, -1, p)
        for i in range(p - 1):
            w[i, i + 1] ^= 1
            w[i, (i + 1) * half % p] ^= 1
    elif r == 1:
        w[p - 2:, p - 2:] = 1
    elif r == 2:
        for u, v in [(p - 3, p - 2), (p - 3, p - 1), (p - 2, p - 3),
                     (p - 2, p - 1), (p - 1, p - 3), (p - 1, p - 2)]:
            w[u, v] = 1
    elif r == 3:
        for u, v in [(p - 5, p - 2), (p - 5, p - 1), (p - 4, p - 3), (p - 4, p - 1),
                     (p - 2, p - 4), (p - 2, p - 2), (p - 1, p - 4), (p - 1, p - 3)]:
            w[u, v] = 1
    else:
        return None
    return w
