# %% [markdown]
# # Recovering erased lines
#
# EBR(p, r, q, 1) also survives r erased lines of one parity slope. An
# affine re-indexing of the array turns those lines into columns while
# permuting the other parity slopes, and the column decoder does the rest.

# %%
import numpy as np

from ebrcodes import EBRCode, LineId, slope_to_column_map, recover_lines
from ebrcodes.geometry import erase_lines

code = EBRCode(7, 3)
cw = code.encode(np.random.default_rng(5).integers(0, 2, code.data_shape, dtype=np.uint8))
lines = [LineId(2, a) for a in (0, 3, 4)]
print(erase_lines(cw, lines).erased.astype(int))
print("map used:", slope_to_column_map(7, 3, 2))
print("recovered:", np.array_equal(recover_lines(cw, lines, code), cw))

# %% [markdown]
# The extra row matters. A plain array code with only the column parity row
# appended has a second codeword hiding on two slope-1 lines of the zero
# array; the expanded code rules it out.

# %%
from ebrcodes import BRVPCode

zero = np.zeros((5, 5), np.uint8)
two = [LineId(1, 1), LineId(1, 4)]
mask = erase_lines(zero, two).erased
rival = mask.astype(np.uint8)
print("rival is a BRVP codeword:", BRVPCode(5, 2).is_codeword(rival))
print("rival is an EBR codeword:", EBRCode(5, 2).is_codeword(rival))
print("EBR pattern uniquely decodable:", EBRCode(5, 2).is_recoverable(mask))
