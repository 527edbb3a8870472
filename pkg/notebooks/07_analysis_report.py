# %% [markdown]
# # Analysis suite
#
# Each suite yields claims of the form `claim=<name> computed=<c>
# expected=<e> status=pass|fail`. Distances are computed exactly by
# enumerating the code when its dimension allows and by a syndrome search
# otherwise.

# %%
from ebrcodes import EBRCode
from ebrcodes.analysis import SUITES, distance_bounds, format_report, run_suite

for name in SUITES:
    print(f"--- {name}")
    print(format_report(run_suite(name)))

# %% [markdown]
# Lower bound d(r+1) and an explicit codeword that meets it.

# %%
bound = distance_bounds(EBRCode(11, 9))
print(bound.lower, bound.witness_weight)
print(bound.witness)
