# %% [markdown]
# # Fields and the cyclic ring
#
# Symbols live in GF(2^b). A column of length p is an element of the ring
# where multiplying by alpha is a cyclic shift, so every parity computation
# reduces to XORs of rotated columns.

# %%
import numpy as np

from ebrcodes import field_new, rotate, solve_recursion
from ebrcodes.ring import format_ring, ring_from_exponents

gf16 = field_new(4)
print(gf16, "beta^4 =", gf16.power(4), " 7 * 9 =", gf16.mul(7, 9), " 1/7 =", gf16.inv(7))

# %% [markdown]
# Multiplying by alpha^s rotates the column down by s places.

# %%
v = ring_from_exponents(7, [0, 1, 4, 6])
print("v            =", format_ring(v))
print("alpha^2 * v  =", format_ring(rotate(v, 2)))

# %% [markdown]
# Dividing by 1 + alpha^j is the core step of column decoding. It has two
# solutions in the ring and exactly one has even weight; the solver returns
# that one with (3p - 5) / 2 XORs.

# %%
z = solve_recursion(3, v)
print("z =", format_ring(z))
print("check (1 + alpha^3) z == v:", np.array_equal(z ^ rotate(z, 3), v))
