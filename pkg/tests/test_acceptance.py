"""Acceptance gate: one test per criterion, each reported as a single
``ACCEPTANCE <n> <title>: PASS|FAIL`` line at the end of the pytest run
(or when this file is executed directly)."""

from __future__ import annotations

import functools
import itertools
import os
import sys
import time
import traceback

import numpy as np
import pytest

from ebrcodes import analysis, cli, golden
from ebrcodes.arrays import INF, CodeArray, DecodeTrace, repair_columns_locally
from ebrcodes.ebr import BRVPCode, EBRCode, from_br, is_br_codeword, to_br
from ebrcodes.eip import EIPCode, from_ip, is_ip_codeword, to_ip
from ebrcodes.geometry import LineId, erase_lines, recover_lines
from ebrcodes.gf import field_new
from ebrcodes.punct import PuncturedCode, rs_equivalence_failures
from ebrcodes.ring import XorCounter, format_ring, ring_from_exponents, solve_recursion
from ebrcodes.shards import ShardStore, shard_name
from ebrcodes.vcode import CyclicCode

sys.path.insert(0, os.path.dirname(__file__))
from oracles import circulant, gf2_solve  # noqa: E402

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, limit: float | None = None):
    """Record the outcome (and enforce the time limit) of one criterion."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                RESULTS[number] = (f"ACCEPTANCE {number:2d} {title}: FAIL "
                                   f"({reason}) [{elapsed:.2f} s]")
                print(RESULTS[number])
                raise
            RESULTS[number] = f"ACCEPTANCE {number:2d} {title}: PASS [{elapsed:.2f} s]"
            print(RESULTS[number])
        return run
    return wrap


def ring(p, *exps):
    return ring_from_exponents(p, exps)


def column_weight(arr):
    """Number of nonzero columns of each array in a batch."""
    return np.count_nonzero(np.any(arr != 0, axis=-2), axis=-1)


# 1 ---------------------------------------------------------------------------

@criterion(1, "golden decode trace", limit=1.0)
def test_01_golden_decode_trace():
    code = EBRCode(7, 3, g=golden.G_HAMMING)
    arr = golden.EBR_7_3_H_ERASED
    sym, mask = repair_columns_locally(code.vertical, arr)
    for col, want in golden.EBR_7_3_H_LOCAL.items():
        assert np.array_equal(sym[:, col], want), f"local repair of column {col}"
    assert sorted(np.nonzero(mask.all(axis=0))[0]) == [1, 3, 6]

    trace = DecodeTrace()
    out = code.repair(arr, trace=trace)
    want = golden.EBR_7_3_H_TRACE
    assert trace.erased == (1, 3, 6)
    for j, exps in enumerate(want["S"]):
        assert np.array_equal(trace.syndromes[j], ring(7, *exps)), f"S_{j}"
    first = trace.steps[0]
    for g_poly, exps in zip(first.locator, want["G"]):
        assert np.array_equal(g_poly.to_dense(), ring(7, *exps))
    assert np.array_equal(first.combined, ring(7, *want["combined"]))
    assert np.array_equal(first.normalized, ring(7, *want["normalized"]))
    assert np.array_equal(first.chain[0], ring(7, *want["chain_first"]))
    for g_poly, exps in zip(trace.steps[1].locator, want["G_second"]):
        assert np.array_equal(g_poly.to_dense(), ring(7, *exps))
    for j, exps in enumerate(want["S_after_first"]):
        assert np.array_equal(trace.steps[1].syndromes[j], ring(7, *exps))
    for col, exps in want["e"].items():
        assert np.array_equal(trace.value(col), ring(7, *exps)), f"column {col}"
    assert format_ring(trace.value(1)) == "α⊕α^2⊕α^3⊕α^6"
    assert format_ring(trace.value(3)) == "0"
    assert format_ring(trace.value(6)) == "1⊕α⊕α^2⊕α^5"
    assert np.array_equal(out, golden.EBR_7_3_H)


# 2 ---------------------------------------------------------------------------

@criterion(2, "recursion golden and p=5 oracle", limit=1.0)
def test_02_recursion():
    z = solve_recursion(3, ring(7, 0, 1, 4, 6))
    assert np.array_equal(z, ring(7, 2, 4, 5, 6))
    vertical = CyclicCode(5)
    for j in range(1, 5):
        A = circulant(5, [0, j])
        for v in vertical.all_codewords():
            z = solve_recursion(j, v, code=vertical, check=True)
            x, unique = gf2_solve(A, v)
            assert x is not None and not unique
            # the oracle's solution set is {x, x + all-ones}; one is in the code
            even = x if x.sum() % 2 == 0 else x ^ 1
            assert np.array_equal(z, even), (j, v)


# 3 ---------------------------------------------------------------------------

@criterion(3, "minimum distances", limit=300.0)
def test_03_distances():
    got = {
        "EBR(7,3,2,1+x+x^3)": analysis.min_hamming_distance(EBRCode(7, 3, g=golden.G_HAMMING)),
        "EBR(7,4,2,1)": analysis.min_hamming_distance(EBRCode(7, 4)),
        "BRVP(7,4,2)": analysis.min_hamming_distance(BRVPCode(7, 4)),
        "product": analysis.min_hamming_distance(analysis.hamming_product_code()),
    }
    want = {"EBR(7,3,2,1+x+x^3)": 16, "EBR(7,4,2,1)": 12, "BRVP(7,4,2)": 10, "product": 12}
    for r in (1, 2, 3, 5, 6):
        got[f"EBR(7,{r},2,1)"] = analysis.min_hamming_distance(EBRCode(7, r))
        want[f"EBR(7,{r},2,1)"] = 2 * (r + 1)
    assert got == want


# 4 ---------------------------------------------------------------------------

@criterion(4, "XOR accounting")
def test_04_xor_counts():
    table = {(17, 8): 358, (17, 15): 701, (127, 8): 2778, (127, 50): 18696}
    got = {key: analysis.shortened_encode_xors(key[0], 2, key[1]) for key in table}
    assert got == table
    for p in (5, 7, 11, 17, 31, 127):
        for j in range(1, p):
            counter = XorCounter()
            v = np.zeros(p, np.uint8)
            v[:2] = 1
            solve_recursion(j, v, counter=counter)
            assert counter.xors == (3 * p - 5) // 2, (p, j)


# 5 ---------------------------------------------------------------------------

@criterion(5, "update locality")
def test_05_update_locality():
    rng = np.random.default_rng(5)
    for p, r in [(5, 1), (5, 2), (5, 3), (7, 2), (7, 4), (11, 3), (13, 5)]:
        code = EIPCode(p, r)
        data = rng.integers(0, 2, code.data_shape, dtype=np.uint8)
        arr = code.encode(data)
        for i, j in itertools.product(range(code.k_local), range(p)):
            plan = code.update(arr, i, j, arr[i, j] ^ 1)
            data[i, j] ^= 1
            assert plan.touched == 2 * r + 1, (p, r, i, j, plan.touched)
            assert np.array_equal(arr, code.encode(data))

    # EIP(7,3,2,1+x+x^3): flipping data bit (2, 1) of the reference array
    code = EIPCode(7, 3, g=golden.G_HAMMING)
    arr = golden.EIP_7_3_H.copy()
    plan = code.update(arr, 2, 1, arr[2, 1] ^ 1)
    assert np.array_equal(arr, golden.EIP_7_3_H_UPDATED)
    data = code.data_region(golden.EIP_7_3_H)
    data[2, 1] ^= 1
    assert np.array_equal(arr, code.encode(data))
    # Target value 11 is checked literally. The delta column has weight 4, so
    # 3 vertical parities plus 3 * 4 parity-column symbols change: 15.
    assert plan.touched == 11, f"touched {plan.touched} symbols, expected 11"


# 6 ---------------------------------------------------------------------------

def _all_line_subsets(code, slopes, count, codewords):
    for slope in slopes:
        for anchors in itertools.combinations(range(code.p), count):
            lines = [LineId(slope, a) for a in anchors]
            out = recover_lines(codewords, lines, code)
            assert np.array_equal(out, codewords), (code, slope, anchors)


@criterion(6, "line MDS", limit=600.0)
def test_06_line_mds():
    rng = np.random.default_rng(6)
    for p, r, slopes in [(5, 2, (0, 1, INF)), (5, 3, (0, 1, 2, INF)), (7, 3, (0, 1, 2, INF))]:
        code = EBRCode(p, r)
        cw = code.encode(rng.integers(0, 2, (20,) + code.data_shape, dtype=np.uint8))
        _all_line_subsets(code, slopes, r, cw)
        for slope in slopes:
            assert analysis.line_mds_check(code, slope)
    code = EBRCode(7, 5)
    cw = code.encode(rng.integers(0, 2, (100,) + code.data_shape, dtype=np.uint8))
    _all_line_subsets(code, range(5), 5, cw)

    # zero array of EBR(5,2,2,1) with slope-1 lines 1 and 4 erased
    lines = [LineId(1, 1), LineId(1, 4)]
    zero = np.zeros((5, 5), np.uint8)
    mask = erase_lines(zero, lines).erased
    rival = mask.astype(np.uint8)                   # ones on both lines
    brvp = BRVPCode(5, 2)
    assert brvp.is_codeword(rival) and not brvp.is_recoverable(mask)
    ebr = EBRCode(5, 2)
    assert not ebr.is_codeword(rival) and ebr.is_recoverable(mask)
    assert not recover_lines(zero, lines, ebr).any()


# 7 ---------------------------------------------------------------------------

@criterion(7, "column MDS checks")
def test_07_mds():
    results = {}
    for p in (5, 7):
        for r in (1, 2, 3):
            results[f"EBR({p},{r},2,1)"] = analysis.mds_columns_check(EBRCode(p, r))
    for r in (1, 2, 3):
        results[f"EBR(7,{r},2,1+x+x^3)"] = analysis.mds_columns_check(
            EBRCode(7, r, g=golden.G_HAMMING))
        results[f"EIP(5,{r},2,1)"] = analysis.mds_columns_check(EIPCode(5, r))
    assert all(results.values()), [k for k, v in results.items() if not v]


# 8 ---------------------------------------------------------------------------

@criterion(8, "Reed-Solomon equivalence", limit=10.0)
def test_08_rs_equivalence():
    code = PuncturedCode(EBRCode(7, 3, g=golden.G_HAMMING))
    assert len(code.generator_matrix()) == 12       # 4096 codewords
    assert rs_equivalence_failures(code, (0, 2, 1), 0b1011, sign=-1) == 0
    assert rs_equivalence_failures(code, (1, 2, 0), 0b1101, sign=+1) == 0


# 9 ---------------------------------------------------------------------------

@criterion(9, "end-to-end CLI", limit=30.0)
def test_09_cli(tmp_path):
    rng = np.random.default_rng(9)
    data = rng.integers(0, 256, 1 << 20, dtype=np.uint8).tobytes()
    src = tmp_path / "input.bin"
    src.write_bytes(data)
    shards = tmp_path / "shards"
    assert cli.main(["encode", "--in", str(src), "--out", str(shards), "--kind", "EIP",
                     "--p", "17", "--r", "2", "--b", "8"]) == 0
    originals = {c: (shards / shard_name(c)).read_bytes() for c in range(19)}

    pairs = [(0, 1), (3, 17), (17, 18), (16, 18)]
    pairs.append(tuple(sorted(int(c) for c in rng.choice(19, 2, replace=False))))
    for pair in pairs:
        for c in pair:
            os.remove(shards / shard_name(c))
        out = tmp_path / f"out_{pair[0]}_{pair[1]}.bin"
        assert cli.main(["decode", "--in", str(shards), "--out", str(out)]) == 0
        assert out.read_bytes() == data, pair
        for c in pair:
            (shards / shard_name(c)).write_bytes(originals[c])

    # d - 1 = 1 damaged symbol row in shard 5
    code = EIPCode(17, 2)
    assert code.d - 1 == 1
    path = shards / shard_name(5)
    blob = bytearray(originals[5])
    stripes = (len(data) + 16 * 17 - 1) // (16 * 17)
    header_len = len(blob) - 17 * stripes - 4
    row = 9
    for k in range(0, stripes, 97):
        blob[header_len + row * stripes + k] ^= 0x5A
    path.write_bytes(bytes(blob))

    store = ShardStore(str(shards))
    reads = cli.repair_column(str(shards), 5, store)
    assert reads == [5] and dict(store.reads) == {5: 1}
    assert path.read_bytes() == originals[5]

    # damaged row plus two lost shards: the row is repaired inside its column
    path.write_bytes(bytes(blob))
    for c in (0, 18):
        os.remove(shards / shard_name(c))
    out = tmp_path / "out_mixed.bin"
    problems, _ = cli.decode_dir(str(shards), str(out))
    assert problems[5] == "1 damaged rows"
    assert out.read_bytes() == data


# 10 --------------------------------------------------------------------------

N_PROPERTY = 10_000


@criterion(10, "property suites")
def test_10_properties():
    rng = np.random.default_rng(10)
    gf8 = field_new(3)

    for code in (EBRCode(7, 3), EBRCode(7, 3, g=golden.G_HAMMING), EBRCode(5, 2)):
        cw = code.encode(rng.integers(0, 2, (N_PROPERTY,) + code.data_shape, dtype=np.uint8))
        br = code.to_br(cw)
        assert np.all(is_br_codeword(br, code.r))
        assert np.array_equal(code.from_br(br), cw)
        assert np.array_equal(column_weight(br), column_weight(cw))
        br2 = code.br_encode(rng.integers(0, 2, (N_PROPERTY, code.p - 1, code.k_cols),
                                          dtype=np.uint8))
        assert np.array_equal(to_br(from_br(br2)), br2)
        assert np.array_equal(column_weight(from_br(br2)), column_weight(br2))

    for code in (EIPCode(7, 3), EIPCode(5, 2, g=(1,))):
        cw = code.encode(rng.integers(0, 2, (N_PROPERTY,) + code.data_shape, dtype=np.uint8))
        ip = code.to_ip(cw)
        assert np.all(is_ip_codeword(ip, code.r))
        assert np.array_equal(from_ip(ip), cw)
        assert np.array_equal(column_weight(ip), column_weight(cw))

    bases = (EBRCode(7, 3, g=golden.G_HAMMING), EIPCode(7, 2, field=gf8, g=golden.G_GF8),
             EIPCode(5, 3))
    for base in bases:
        code = PuncturedCode(base)
        cw = base.encode(rng.integers(0, base.field.q, (N_PROPERTY,) + base.data_shape,
                                      dtype=np.uint8))
        punct = code.puncture(cw)
        back = code.unpuncture(punct)
        assert back.is_complete and np.array_equal(back.symbols, cw)
        assert np.array_equal(column_weight(punct), column_weight(cw))

    # decoder outputs satisfy membership
    codes = [EBRCode(7, 3, g=golden.G_HAMMING), EBRCode(11, 4), EIPCode(7, 3),
             EIPCode(5, 2, field=field_new(8)), EBRCode(7, 3, field=gf8, g=golden.G_GF8),
             PuncturedCode(EBRCode(7, 2, g=golden.G_HAMMING)), PuncturedCode(EIPCode(7, 2))]
    for code in codes:
        data_shape = code.data_shape
        for _ in range(20):
            cw = code.encode(rng.integers(0, code.field.q, (N_PROPERTY // 20,) + data_shape,
                                          dtype=np.uint8))
            cols = rng.choice(code.cols, code.r, replace=False)
            arr = CodeArray(cw, np.zeros(code.shape, bool)).erase_columns(cols)
            out = code.repair(arr)
            assert np.all(code.is_codeword(out)), (code, cols)
            assert np.array_equal(out, cw)

    code = EBRCode(7, 3)
    cw = code.encode(rng.integers(0, 2, (N_PROPERTY,) + code.data_shape, dtype=np.uint8))
    out = recover_lines(cw, [LineId(2, 0), LineId(2, 3), LineId(2, 4)], code)
    assert np.all(code.is_codeword(out)) and np.array_equal(out, cw)


def report() -> str:
    titles = {1: "golden decode trace", 2: "recursion golden and p=5 oracle",
              3: "minimum distances", 4: "XOR accounting", 5: "update locality",
              6: "line MDS", 7: "column MDS checks", 8: "Reed-Solomon equivalence",
              9: "end-to-end CLI", 10: "property suites"}
    return "\n".join(RESULTS.get(n, f"ACCEPTANCE {n:2d} {t}: NOT RUN")
                     for n, t in titles.items())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
