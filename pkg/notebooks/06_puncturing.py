# %% [markdown]
# # Punctured codes
#
# Dropping the last t + 1 rows (the vertical parities) gives a smaller MDS
# array code. Surviving columns are re-extended by vertical encoding before
# decoding, so the full code's machinery is reused.

# %%
import numpy as np

from ebrcodes import CodeArray, EBRCode, PuncturedCode
from ebrcodes.punct import permutations_passing, rs_equivalence_failures

code = PuncturedCode(EBRCode(7, 3, g=0b1011))
rng = np.random.default_rng(6)
cw = code.encode(rng.integers(0, 2, code.data_shape, dtype=np.uint8))
print("punctured shape", code.shape)
arr = CodeArray(cw, np.zeros(code.shape, bool)).erase_columns([0, 3, 4])
print("three lost columns recovered:", np.array_equal(code.decode(arr), cw))

# %% [markdown]
# With three rows left, each column is a GF(8) symbol. Under the right row
# order the punctured code is a Reed-Solomon code; the check enumerates all
# 4096 codewords.

# %%
print("failures, rows (0,2,1), 1+x+x^3:", rs_equivalence_failures(code, (0, 2, 1), 0b1011, -1))
print("failures, rows (1,2,0), 1+x^2+x^3:", rs_equivalence_failures(code, (1, 2, 0), 0b1101, +1))
print("failures, identity order:", rs_equivalence_failures(code, (0, 1, 2), 0b1011, -1))
print("orders that work with 1+x+x^3:", permutations_passing(code, 0b1011))
