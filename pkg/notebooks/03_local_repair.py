# %% [markdown]
# # Local repair inside one column
#
# The vertical code has minimum distance d (4 for the Hamming generator),
# so up to d - 1 erasures inside a column, or a burst of t + 1, are rebuilt
# from that column alone. Only the columns that are too damaged fall back to the
# global decoder.

# %%
import numpy as np

from ebrcodes import CodeArray, EBRCode
from ebrcodes.arrays import repair_columns_locally

code = EBRCode(7, 3, g=0b1011)
cw = code.encode(np.random.default_rng(3).integers(0, 2, code.data_shape, dtype=np.uint8))
arr = CodeArray(cw, np.zeros(code.shape, bool))
arr = arr.erase_columns([1, 6]).erase_cells([(0, 0), (4, 0), (2, 3), (3, 3), (4, 3), (5, 3)])
print(arr.erased.astype(int))

# %%
sym, mask = repair_columns_locally(code.vertical, arr)
print("still erased after the local phase:\n", mask.astype(int))
print("full repair matches:", np.array_equal(code.repair(arr), cw))
