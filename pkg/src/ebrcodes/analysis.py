"""Exhaustive and search-based checks of distance, MDS and XOR-cost claims.

Every check works from a generator matrix obtained independently of the
encoders (the null space of a code's parity-check system), so it doubles as
an oracle for the codecs themselves.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import golden, linalg
from .arrays import INF, line_cells
from .ebr import BRVPCode, EBRCode
from .eip import EIPCode
from .errors import BadParameters, TooLarge, UnknownSuite
from .gf import GF2, FieldTable, poly_from_mask
from .punct import PuncturedCode, rs_equivalence_check
from .ring import XorCounter, solve_recursion
from .vcode import CyclicCode

ENUMERATION_BITS = 24
SEARCH_BUDGET = 5_000_000
SUBSET_BUDGET = 200_000


# -- generator matrices -----------------------------------------------------

def generator_matrix(code) -> np.ndarray:
    """Rows span the code; each row is a flattened array."""
    if hasattr(code, "generator_matrix"):
        return code.generator_matrix()
    return linalg.nullspace(code.constraint_matrix(), code.field)


def cyclic_parity_check(n: int, gen, field: FieldTable = GF2) -> np.ndarray:
    """Parity-check matrix of the length-``n`` cyclic code generated by ``gen``."""
    gen = poly_from_mask(gen) if isinstance(gen, int) else list(gen)
    k = n - (len(gen) - 1)
    G = np.zeros((k, n), dtype=np.uint8)
    for i in range(k):
        G[i, i:i + len(gen)] = gen
    return linalg.nullspace(G, field)


class ProductCode:
    """Arrays whose columns lie in one code and whose rows lie in another,
    both given by parity-check matrices."""

    kind = "PRODUCT"

    def __init__(self, col_check: np.ndarray, row_check: np.ndarray,
                 field: FieldTable = GF2, name: str = "product"):
        self.col_check = np.asarray(col_check, dtype=np.uint8)
        self.row_check = np.asarray(row_check, dtype=np.uint8)
        self.field = field
        self.rows = self.col_check.shape[1]
        self.cols = self.row_check.shape[1]
        self.name = name

    def __repr__(self):
        return f"ProductCode({self.name})"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def constraint_matrix(self) -> np.ndarray:
        n = self.cols
        out = []
        for v in range(n):
            for h in self.col_check:
                row = np.zeros(self.rows * n, dtype=np.uint8)
                row[v::n] = h
                out.append(row)
        for u in range(self.rows):
            for h in self.row_check:
                row = np.zeros(self.rows * n, dtype=np.uint8)
                row[u * n:(u + 1) * n] = h
                out.append(row)
        return np.array(out, dtype=np.uint8)


def hamming_product_code() -> ProductCode:
    """Columns in C(7, (1+x+x^3)(1+x)), rows in the [7,4,3] Hamming code."""
    vertical = CyclicCode(7, GF2, golden.G_HAMMING)
    return ProductCode(vertical.H_local, cyclic_parity_check(7, golden.G_HAMMING),
                       name="C(7,(1+x+x^3)(1+x)) x Hamming[7,4,3]")


# -- minimum distance -------------------------------------------------------

def _pack(rows: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows into uint64 words (bit i of word w = column 64w+i)."""
    n = rows.shape[1]
    words = -(-n // 64)
    padded = np.zeros((rows.shape[0], words * 64), dtype=np.uint64)
    padded[:, :n] = rows
    shifts = np.arange(64, dtype=np.uint64)
    return (padded.reshape(rows.shape[0], words, 64) << shifts).sum(axis=2, dtype=np.uint64)


def _span_table(packed: np.ndarray) -> np.ndarray:
    table = np.zeros((1 << len(packed), packed.shape[1]), dtype=np.uint64)
    for i, row in enumerate(packed):
        half = 1 << i
        table[half:2 * half] = table[:half] ^ row
    return table


def min_weight_exhaustive(G: np.ndarray) -> int:
    """Minimum weight over the nonzero span of binary rows ``G``."""
    k = len(G)
    if k == 0:
        raise BadParameters("the zero code has no minimum distance")
    if k > ENUMERATION_BITS:
        raise TooLarge(f"2^{k} codewords exceed the enumeration budget", bound=None)
    packed = _pack(G)
    lo_bits = k // 2
    low = _span_table(packed[:lo_bits])
    high = _span_table(packed[lo_bits:])
    weights_low = np.bitwise_count(low).sum(axis=1)
    best = int(weights_low[1:].min()) if len(low) > 1 else G.shape[1] + 1
    chunk = max(1, (1 << 22) // len(low))
    for start in range(1, len(high), chunk):
        blk = high[start:start + chunk]
        w = np.bitwise_count(blk[:, None, :] ^ low[None, :, :]).sum(axis=2)
        best = min(best, int(w.min()))
    return best


def _rows_as_void(synd: np.ndarray) -> np.ndarray:
    synd = np.ascontiguousarray(synd)
    return synd.view(np.dtype((np.void, synd.dtype.itemsize * synd.shape[1]))).ravel()


def _has_duplicate(synd: np.ndarray) -> bool:
    view = _rows_as_void(synd)
    return len(np.unique(view)) < len(view)


def _shares_row(x: np.ndarray, y: np.ndarray) -> bool:
    return bool(np.isin(_rows_as_void(x), _rows_as_void(y)).any())


def min_weight_search(H: np.ndarray, budget: int = SEARCH_BUDGET,
                      start: int = 1) -> int:
    """Minimum weight of a nonzero binary codeword with parity checks ``H``.

    At weight ``w`` a codeword exists iff two different sets of column
    syndromes, of sizes ``floor(w/2)`` and ``ceil(w/2)``, share a syndrome;
    smaller weights have been ruled out by then, so overlapping sets cannot
    collide. Raises :class:`TooLarge` carrying the proven lower bound once
    the number of column subsets exceeds ``budget``.
    """
    H = np.asarray(H, dtype=np.uint8)
    n = H.shape[1]
    cols = _pack(H.T)
    for w in range(start, n + 1):
        a, b = w // 2, w - w // 2
        if math.comb(n, b) > budget:
            raise TooLarge(f"no codeword of weight < {w}; search budget exhausted", bound=w)
        sb = _subset_syndromes(cols, b)
        if a == 0:
            if (sb == 0).all(axis=1).any():
                return w
            continue
        if a == b:
            if _has_duplicate(sb):
                return w
            continue
        if _shares_row(_subset_syndromes(cols, a), sb):
            return w
    raise BadParameters("code has no nonzero codeword")


def _subset_syndromes(cols: np.ndarray, size: int) -> np.ndarray:
    idx = np.array(list(itertools.combinations(range(len(cols)), size)), dtype=np.int64)
    out = np.zeros((len(idx), cols.shape[1]), dtype=np.uint64)
    for k in range(size):
        out ^= cols[idx[:, k]]
    return out


def min_hamming_distance(code, budget: int = SEARCH_BUDGET) -> int:
    """Symbol-weight minimum distance of a binary array code."""
    if not code.field.is_binary:
        raise BadParameters("distance enumeration is implemented for binary codes")
    G = generator_matrix(code)
    if len(G) <= ENUMERATION_BITS:
        return min_weight_exhaustive(G)
    if hasattr(code, "constraint_matrix"):
        H = code.constraint_matrix()
    else:
        H = linalg.nullspace(G, code.field)
    return min_weight_search(H, budget)


# -- bounds and witnesses ---------------------------------------------------

@dataclass
class DistanceBound:
    lower: int
    witness: np.ndarray | None

    @property
    def witness_weight(self) -> int | None:
        return None if self.witness is None else int(np.count_nonzero(self.witness))


def ebr_weight_witness(p: int, r: int) -> np.ndarray | None:
    """A codeword of EBR(p, r, 2, 1) with weight 2(r+1), where a construction
    is known (r in {1, 2, 3, p-2, p-1})."""
    return golden.distance_witness(p, r)


def distance_bounds(code) -> DistanceBound:
    """Lower bound ``d(r+1)`` and, when one is known, a codeword reaching it."""
    lower = code.d * (code.r + 1)
    witness = None
    if code.kind == "EIP":
        w = code.vertical.min_weight_word()
        data = np.zeros(code.data_shape, dtype=np.uint8)
        data[:, 0] = w[:code.k_local]
        witness = code.encode(data)
    elif code.kind == "EBR" and code.g == (1,) and code.field.is_binary:
        witness = ebr_weight_witness(code.p, code.r)
    if witness is not None and not code.is_codeword(witness):
        raise AssertionError(f"constructed witness is not a codeword of {code!r}")
    return DistanceBound(lower, witness)


# -- MDS checks -------------------------------------------------------------

def _erasure_subsets_ok(G: np.ndarray, shape, erasure_sets, field) -> bool:
    k = len(G)
    rows, cols = shape
    for cells in erasure_sets:
        keep = np.ones(rows * cols, dtype=bool)
        for u, v in cells:
            keep[u * cols + v] = False
        if linalg.rank(G[:, keep], field) < k:
            return False
    return True


def mds_columns_check(code, budget: int = SUBSET_BUDGET) -> bool:
    """Whether every set of ``r`` erased columns is recoverable."""
    n, r = code.cols, code.r
    if math.comb(n, r) > budget:
        raise TooLarge(f"C({n},{r}) column subsets exceed the budget")
    rows = code.rows
    subsets = ([(u, v) for v in cs for u in range(rows)]
               for cs in itertools.combinations(range(n), r))
    return _erasure_subsets_ok(generator_matrix(code), (rows, n), subsets, code.field)


def line_mds_check(code, slope, count: int | None = None,
                   budget: int = SUBSET_BUDGET) -> bool:
    """Whether every set of ``count`` (default ``r``) erased slope-``slope``
    lines of a ``p x p`` code is recoverable."""
    p = code.p
    count = code.r if count is None else count
    if (code.rows, code.cols) != (p, p):
        raise BadParameters("line checks need p x p arrays")
    if math.comb(p, count) > budget:
        raise TooLarge(f"C({p},{count}) line subsets exceed the budget")
    subsets = ([cell for a in anchors for cell in line_cells(slope, a, p)]
               for anchors in itertools.combinations(range(p), count))
    return _erasure_subsets_ok(generator_matrix(code), (p, p), subsets, code.field)


# -- XOR accounting ---------------------------------------------------------

def xor_profile(operation) -> XorCounter:
    """Run ``operation(counter)`` and return the filled counter."""
    counter = XorCounter()
    operation(counter)
    return counter


def shortened_encode_xors(p: int, r: int, k: int, seed: int = 0) -> int:
    code = EIPCode(p, r)
    data = np.random.default_rng(seed).integers(0, 2, (code.k_local, k), dtype=np.uint8)
    return xor_profile(lambda c: code.encode_shortened(data, counter=c)).xors


def shortened_encode_formula(p: int, r: int, k: int) -> int:
    return k * (p - 2) + r * (k - 1) * p


def recursion_xors(p: int, j: int = 1) -> int:
    v = np.zeros(p, dtype=np.uint8)
    v[0] = v[1] = 1
    return xor_profile(lambda c: solve_recursion(j, v, counter=c)).xors


def update_touched(code: EIPCode, i: int = 0, j: int = 0, seed: int = 0) -> int:
    rng = np.random.default_rng(seed)
    arr = code.encode(rng.integers(0, code.field.q, code.data_shape, dtype=np.uint8))
    return code.update(arr, i, j, arr[i, j] ^ 1).touched


# -- reports ----------------------------------------------------------------

@dataclass
class Claim:
    name: str
    computed: object
    expected: object

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def line(self) -> str:
        status = "pass" if self.passed else "fail"
        return (f"claim={self.name} computed={self.computed} "
                f"expected={self.expected} status={status}")


def format_report(claims) -> str:
    return "\n".join(c.line() for c in claims)


def _hamming_ebr(r: int) -> EBRCode:
    return EBRCode(7, r, GF2, golden.G_HAMMING)


def suite_distance():
    yield Claim("distance.EBR(7,3,2,1+x+x^3)", min_hamming_distance(_hamming_ebr(3)), 16)
    yield Claim("distance.EBR(7,4,2,1)", min_hamming_distance(EBRCode(7, 4)), 12)
    yield Claim("distance.BRVP(7,4,2)", min_hamming_distance(BRVPCode(7, 4)), 10)
    for r in (1, 2, 3, 5, 6):
        yield Claim(f"distance.EBR(7,{r},2,1)", min_hamming_distance(EBRCode(7, r)), 2 * (r + 1))
    yield Claim("distance.product(7,4)x(7,4)", min_hamming_distance(hamming_product_code()), 12)


def suite_mds():
    for p in (5, 7):
        for r in (1, 2, 3):
            yield Claim(f"mds.EBR({p},{r},2,1)", mds_columns_check(EBRCode(p, r)), True)
    for r in (1, 2, 3):
        yield Claim(f"mds.EBR(7,{r},2,1+x+x^3)", mds_columns_check(_hamming_ebr(r)), True)
        yield Claim(f"mds.EIP(5,{r},2,1)", mds_columns_check(EIPCode(5, r)), True)
        yield Claim(f"mds.PEBR(7,{r},2,1+x+x^3)",
                    mds_columns_check(PuncturedCode(_hamming_ebr(r))), True)


def suite_lines():
    for slope in (0, 1, INF):
        yield Claim(f"lines.EBR(5,2,2,1).slope={slope}", line_mds_check(EBRCode(5, 2), slope), True)
    for p in (5, 7):
        for slope in (0, 1, 2, INF):
            yield Claim(f"lines.EBR({p},3,2,1).slope={slope}",
                        line_mds_check(EBRCode(p, 3), slope), True)
    for j in range(5):
        yield Claim(f"lines.EBR(7,5,2,1).slope={j}", line_mds_check(EBRCode(7, 5), j), True)


def suite_xor():
    for p, k, expected in ((17, 8, 358), (17, 15, 701), (127, 8, 2778), (127, 50, 18696)):
        yield Claim(f"xor.shortened_encode(p={p},r=2,k={k})", shortened_encode_xors(p, 2, k), expected)
    for p in (5, 7, 17, 31):
        yield Claim(f"xor.recursion(p={p})", recursion_xors(p), (3 * p - 5) // 2)
    for r in (1, 2, 3):
        yield Claim(f"xor.update_touched(EIP(7,{r},2,1))", update_touched(EIPCode(7, r)), 2 * r + 1)


def suite_golden():
    gf8 = FieldTable(3)
    checks = [
        ("EBR(5,3,2,1)", EBRCode(5, 3).is_codeword(golden.EBR_5_3)),
        ("EBR(7,3,2,1+x+x^3).first", _hamming_ebr(3).is_codeword(golden.EBR_7_3_H)),
        ("EBR(7,3,2,1+x+x^3).light", _hamming_ebr(3).is_codeword(golden.EBR_7_3_H_LIGHT)),
        ("EBR(7,3,8,beta+x)", EBRCode(7, 3, gf8, golden.G_GF8).is_codeword(golden.ebr_7_3_gf8(gf8))),
        ("EIP(5,3,2,1)", EIPCode(5, 3).is_codeword(golden.EIP_5_3)),
        ("EIP(7,3,2,1+x+x^3).before", EIPCode(7, 3, g=golden.G_HAMMING).is_codeword(golden.EIP_7_3_H)),
        ("EIP(7,3,2,1+x+x^3).after", EIPCode(7, 3, g=golden.G_HAMMING).is_codeword(golden.EIP_7_3_H_UPDATED)),
        ("BRVP(7,3,2)", BRVPCode(7, 3).is_codeword(golden.BRVP_7_3)),
        ("BRVP(7,4,2).light", BRVPCode(7, 4).is_codeword(golden.BRVP_7_4_LIGHT)),
        ("EBR(7,4,2,1).light", EBRCode(7, 4).is_codeword(golden.EBR_7_4_LIGHT)),
        ("to_br(EBR(5,3,2,1))", bool((EBRCode(5, 3).to_br(golden.EBR_5_3) == golden.EBR_5_3_AS_BR).all())),
        ("to_ip(EIP(5,3,2,1))", bool((EIPCode(5, 3).to_ip(golden.EIP_5_3) == golden.EIP_5_3_AS_IP).all())),
        ("decode.mixed_erasures", bool((_hamming_ebr(3).repair(golden.EBR_7_3_H_ERASED) == golden.EBR_7_3_H).all())),
        ("line_cells(p=5,slope=1,row=1)", line_cells(1, 1, 5) == golden.LINE_5_SLOPE1_ROW1),
        ("rs_equivalence(0 2 1, 1+x+x^3)",
         rs_equivalence_check(PuncturedCode(_hamming_ebr(3)), (0, 2, 1), 0b1011, -1)),
        ("rs_equivalence(1 2 0, 1+x^2+x^3)",
         rs_equivalence_check(PuncturedCode(_hamming_ebr(3)), (1, 2, 0), 0b1101, +1)),
    ]
    for name, ok in checks:
        yield Claim(f"golden.{name}", bool(ok), True)


SUITES = {
    "distance": suite_distance,
    "mds": suite_mds,
    "lines": suite_lines,
    "xor": suite_xor,
    "paper-golden": suite_golden,
}


def run_suite(name: str) -> list[Claim]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return list(suite())
