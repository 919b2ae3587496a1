# %% [markdown]
# # From a subsection to k(B) <= 15
#
# A block with a major subsection of order 3, four Brauer characters and
# an inertial quotient of order 2 swapping the first two of them.

# %%
from __future__ import annotations

from pathlib import Path

from blockbounds import SubsectionSpec, build_m, dynkin_a, max_k, prune, smith_normal_form
from blockbounds.gram_search import decomposition_classes
from blockbounds.qforms import bound_outer

cartan = [[3, 2, 2, 2], [2, 3, 2, 2], [2, 2, 3, 2], [2, 2, 2, 3]]
spec = SubsectionSpec.create(3, 1, cartan, [2], [[2, 1, 3, 4]])

# %%
m = build_m(spec)
print(m)
print("trace", m.trace(), "rank", m.rank())
print("elementary divisors", smith_normal_form(m))

# %% [markdown]
# Two rows of M vanish and M has rank 4. Pruning
# keeps a positive definite 4x4 Gram of the same lattice.

# %%
red = prune(m)
print(red.reduced)
print("dropped rows", red.dropped_rows)

# %%
print("outer bound:", bound_outer(dynkin_a(4), cartan, 3))

# %%
res = max_k(red.reduced)
print("largest k:", res.k, "exact:", res.exact, "nodes:", res.nodes)
for row in res.witness.rows:
    print(row)

# %%
classes = decomposition_classes(red.reduced, res.k)
print("decompositions up to signs, order and symmetries of M:", len(classes))

# %% [markdown]
# The same pipeline is available from the command line:
#
#     blockbounds bound specs/example.yaml

# %%
if __name__ == "__main__":
    print(Path(__file__).name, "done")
