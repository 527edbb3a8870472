# %% [markdown]
# # Independent parities, small writes and short data
#
# EIP(p, r) appends r parity columns to p data columns. Changing one data
# bit with g = 1 rewrites the bit, one vertical parity and one symbol in
# each parity column: 2r + 1 symbols besides the bit itself.

# %%
import numpy as np

from ebrcodes import EIPCode
from ebrcodes.eip import eip_encode_shortened

code = EIPCode(7, 3)
rng = np.random.default_rng(4)
data = rng.integers(0, 2, code.data_shape, dtype=np.uint8)
arr = code.encode(data)
plan = code.update(arr, 2, 5, arr[2, 5] ^ 1)
data[2, 5] ^= 1
print("touched:", plan.touched, " equals re-encode:", np.array_equal(arr, code.encode(data)))

# %% [markdown]
# A stronger vertical code costs more per update: every nonzero symbol of
# the column delta propagates into each parity column.

# %%
strong = EIPCode(7, 3, g=0b1011)
arr = strong.encode(rng.integers(0, 2, strong.data_shape, dtype=np.uint8))
print("touched with g = 1 + x + x^3:", strong.update(arr, 0, 0, arr[0, 0] ^ 1).touched)

# %% [markdown]
# Shortened encoding treats missing data columns as zero and never touches
# them; the XOR count is k(p - 2) + r(k - 1)p.

# %%
for p, k in [(17, 8), (17, 15), (127, 8), (127, 50)]:
    c = EIPCode(p, 2)
    _, xors = eip_encode_shortened(rng.integers(0, 2, (c.k_local, k), dtype=np.uint8), c)
    print(f"p={p:3d} k={k:2d} xors={xors}")
