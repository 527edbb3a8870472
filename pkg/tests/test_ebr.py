import itertools

import numpy as np
import pytest

from ebrcodes import golden
from ebrcodes.arrays import CodeArray, DecodeTrace
from ebrcodes.ebr import BRVPCode, EBRCode, from_br, generator_basis, is_br_codeword, to_br
from ebrcodes.errors import BadParameters, BadShape, NotACodeword, TooManyErasures
from ebrcodes.gf import field_new

from oracles import brute_fill, lines_even, poly_mod2_divisible


def oracle_member(arr, r, gen=(1, 1)):
    """Membership written straight from the definition: every column is a
    multiple of ``gen`` and the lines of slopes 0..r-1 have even parity."""
    cols_ok = all(poly_mod2_divisible(arr[:, v], gen) for v in range(arr.shape[1]))
    return cols_ok and lines_even(arr, range(r))


def all_data(shape):
    k = shape[0] * shape[1]
    idx = np.arange(1 << k)[:, None] >> np.arange(k)
    return (idx & 1).astype(np.uint8).reshape((-1,) + shape)


HAMMING_GEN = (1, 0, 1, 1, 1)  # (1 + x + x^3)(1 + x)


def test_golden_arrays_are_codewords():
    assert EBRCode(5, 3).is_codeword(golden.EBR_5_3)
    assert oracle_member(golden.EBR_5_3, 3)
    for arr in (golden.EBR_7_3_H, golden.EBR_7_3_H_LIGHT):
        assert EBRCode(7, 3, g=golden.G_HAMMING).is_codeword(arr)
        assert oracle_member(arr, 3, HAMMING_GEN)
    assert EBRCode(7, 4).is_codeword(golden.EBR_7_4_LIGHT)
    field = field_new(3)
    assert EBRCode(7, 3, field=field, g=golden.G_GF8).is_codeword(golden.ebr_7_3_gf8(field))


def test_membership_rejects_single_flips():
    code = EBRCode(7, 3, g=golden.G_HAMMING)
    for u, v in itertools.product(range(7), repeat=2):
        bad = golden.EBR_7_3_H.copy()
        bad[u, v] ^= 1
        assert not code.is_codeword(bad)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_exhaustive_p5_encode_and_column_decode(r):
    code = EBRCode(5, r)
    data = all_data(code.data_shape)
    cw = code.encode(data)
    assert np.array_equal(code.data_region(cw), data)
    assert np.all(code.is_codeword(cw))
    # independent membership on a sample
    for w in cw[:: max(1, len(cw) // 64)]:
        assert oracle_member(w, r)
    for n in range(1, r + 1):
        for cols in itertools.combinations(range(5), n):
            arr = CodeArray(cw, np.zeros((5, 5), bool)).erase_columns(cols)
            assert np.array_equal(code.decode_columns(arr), cw)


def test_column_decoder_matches_brute_force(rng):
    code = EBRCode(5, 2)
    for cols in itertools.combinations(range(5), 2):
        cw = code.encode(rng.integers(0, 2, code.data_shape, dtype=np.uint8))
        mask = np.zeros((5, 5), bool)
        mask[:, list(cols)] = True
        fills = brute_fill(lambda a: oracle_member(a, 2), np.where(mask, 0, cw), mask)
        assert len(fills) == 1
        assert np.array_equal(code.decode_columns(CodeArray(cw, mask)), fills[0])


@pytest.mark.parametrize("p,r", [(7, 3), (11, 4), (13, 6)])
def test_decoder_agrees_with_elimination(p, r, rng):
    code = EBRCode(p, r)
    cw = code.encode(rng.integers(0, 2, (8,) + code.data_shape, dtype=np.uint8))
    for _ in range(5):
        cols = rng.choice(p, r, replace=False)
        arr = CodeArray(cw, np.zeros((p, p), bool)).erase_columns(cols)
        fast = code.decode_columns(arr)
        assert np.array_equal(fast, code.solve_by_elimination(arr))
        assert np.array_equal(fast, cw)


def test_hamming_vertical_code_mixed_repair(rng):
    code = EBRCode(7, 3, g=golden.G_HAMMING)
    arr = golden.EBR_7_3_H_ERASED
    trace = DecodeTrace()
    assert np.array_equal(code.repair(arr, trace=trace), golden.EBR_7_3_H)
    # the solver-of-everything agrees on the same pattern
    assert np.array_equal(code.solve_by_elimination(arr), golden.EBR_7_3_H)


def test_gf8_decode(rng):
    field = field_new(3)
    code = EBRCode(7, 3, field=field, g=golden.G_GF8)
    cw = golden.ebr_7_3_gf8(field)
    for cols in itertools.combinations(range(7), 3):
        arr = CodeArray(cw, np.zeros((7, 7), bool)).erase_columns(cols)
        assert np.array_equal(code.repair(arr), cw)
    data = rng.integers(0, 8, (20,) + code.data_shape, dtype=np.uint8)
    assert np.all(code.is_codeword(code.encode(data)))


def test_custom_parity_columns(rng):
    code = EBRCode(7, 2, parity_cols=(1, 4))
    data = rng.integers(0, 2, (10,) + code.data_shape, dtype=np.uint8)
    cw = code.encode(data)
    assert np.all(code.is_codeword(cw))
    assert np.array_equal(code.data_region(cw), data)


def test_generator_basis_spans_code():
    code = EBRCode(5, 2)
    basis = generator_basis(code)
    assert len(basis) == 4 * 3
    assert np.all(code.is_codeword(basis.reshape(-1, 5, 5)))


def test_errors():
    code = EBRCode(5, 2)
    cw = code.encode(np.zeros(code.data_shape, np.uint8))
    with pytest.raises(TooManyErasures):
        code.decode_columns(CodeArray(cw, np.zeros((5, 5), bool)).erase_columns([0, 1, 2]))
    with pytest.raises(BadShape):
        code.decode_columns(CodeArray(cw, np.zeros((5, 5), bool)).erase_cells([(0, 0)]))
    with pytest.raises(BadParameters):
        EBRCode(6, 2)
    with pytest.raises(BadParameters):
        EBRCode(5, 5)
    bad = cw.copy()
    bad[0, 0] = 1
    with pytest.raises(NotACodeword):
        code.to_br(bad)


def test_br_transform_golden():
    code = EBRCode(5, 3)
    assert np.array_equal(code.to_br(golden.EBR_5_3), golden.EBR_5_3_AS_BR)
    assert np.array_equal(code.from_br(golden.EBR_5_3_AS_BR), golden.EBR_5_3)
    assert is_br_codeword(golden.BR_5_3, 3)
    assert code.is_codeword(from_br(golden.BR_5_3))


def test_br_encode_is_systematic(rng):
    code = EBRCode(7, 3)
    data = rng.integers(0, 2, (30, 6, 4), dtype=np.uint8)
    br = code.br_encode(data)
    assert np.array_equal(br[..., :4], data)
    assert np.all(is_br_codeword(br, 3))
    assert np.array_equal(to_br(from_br(br)), br)


def test_brvp(rng):
    code = BRVPCode(7, 3)
    assert code.is_codeword(golden.BRVP_7_3)
    assert BRVPCode(7, 4).is_codeword(golden.BRVP_7_4_LIGHT)
    data = rng.integers(0, 2, (20,) + code.data_shape, dtype=np.uint8)
    cw = code.encode(data)
    assert np.all(code.is_codeword(cw))
    assert np.all(np.bitwise_xor.reduce(cw, axis=-2) == 0)
