import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ebrcodes import golden
from ebrcodes.arrays import CodeArray
from ebrcodes.ebr import EBRCode
from ebrcodes.eip import EIPCode
from ebrcodes.errors import TooManyErasures
from ebrcodes.gf import field_new
from ebrcodes.punct import PuncturedCode

CODES = [EBRCode(5, 2), EBRCode(7, 3, g=golden.G_HAMMING), EIPCode(5, 3),
         EIPCode(7, 2, field=field_new(4)), PuncturedCode(EBRCode(7, 2, g=golden.G_HAMMING))]


@st.composite
def scenario(draw):
    code = draw(st.sampled_from(CODES))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    data = rng.integers(0, code.field.q, code.data_shape, dtype=np.uint8)
    cols = draw(st.lists(st.integers(0, code.cols - 1), max_size=code.r, unique=True))
    cells = draw(st.lists(st.tuples(st.integers(0, code.rows - 1),
                                    st.integers(0, code.cols - 1)), max_size=6))
    return code, data, cols, cells


@settings(max_examples=150, deadline=None)
@given(scenario())
def test_repair_is_exact_or_refuses(case):
    """Either the decoder reproduces the codeword, or elimination agrees that
    the pattern is not uniquely decodable."""
    code, data, cols, cells = case
    cw = code.encode(data)
    arr = CodeArray(cw, np.zeros(code.shape, bool)).erase_columns(cols).erase_cells(cells)
    try:
        out = code.repair(arr)
    except TooManyErasures:
        if hasattr(code, "is_recoverable"):
            # refusing is only allowed when too many columns are beyond local repair
            assert len(arr.damaged_columns()) > code.r or not code.is_recoverable(arr.erased)
        return
    assert code.is_codeword(out)
    assert np.array_equal(out, cw)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([EBRCode(7, 3), EIPCode(7, 3)]), st.integers(0, 2**32 - 1))
def test_linearity(code, seed):
    rng = np.random.default_rng(seed)
    a, b = rng.integers(0, 2, (2,) + code.data_shape, dtype=np.uint8)
    assert np.array_equal(code.encode(a) ^ code.encode(b), code.encode(a ^ b))
