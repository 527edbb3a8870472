# %% [markdown]
# # Encoding and decoding erased columns
#
# An EBR(p, r, q, g) array is p x p. Every column is a codeword of the
# vertical cyclic code generated by g(x)(1 + x), and the lines of slopes
# 0 .. r-1 have even parity. Any r erased columns can be rebuilt.

# %%
import numpy as np

from ebrcodes import CodeArray, DecodeTrace, EBRCode
from ebrcodes.ring import format_ring

code = EBRCode(7, 3, g=0b1011)          # g(x) = 1 + x + x^3
rng = np.random.default_rng(1)
data = rng.integers(0, 2, code.data_shape, dtype=np.uint8)
cw = code.encode(data)
print("data shape", code.data_shape, "-> array shape", code.shape)
print(cw)

# %% [markdown]
# Erase three columns and decode with a trace, which records the syndromes
# and each recovered column as a ring element.

# %%
arr = CodeArray(cw, np.zeros(code.shape, bool)).erase_columns([0, 2, 5])
trace = DecodeTrace()
out = code.decode_columns(arr, trace=trace)
for j, s in enumerate(trace.syndromes):
    print(f"S_{j} = {format_ring(s)}")
for step in trace.steps:
    print(f"column {step.column}: {format_ring(step.value)}")
print("recovered:", np.array_equal(out, cw))

# %% [markdown]
# The same decoder works over larger fields.

# %%
from ebrcodes import field_new

gf8 = field_new(3)
big = EBRCode(7, 3, field=gf8, g=(2, 1))
cw8 = big.encode(rng.integers(0, 8, big.data_shape, dtype=np.uint8))
print(np.array_equal(big.repair(CodeArray(cw8, np.zeros(big.shape, bool)).erase_columns([1, 3, 6])), cw8))
