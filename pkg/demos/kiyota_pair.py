# %% [markdown]
# # Two Gram matrices, one lattice
#
# The metacyclic group of order 3^2 * 2 * 2 (d = 2) gives generalized
# decomposition numbers whose integer Gram matrix differs from the one
# obtained with the power basis. Both describe the same lattice.

# %%
from __future__ import annotations

from blockbounds import congruent, max_k, metacyclic_q
from blockbounds.lattice import find_congruence
from blockbounds.models import finallem_bound, metacyclic_coefficient_gram, verify_orthogonality

mdl = metacyclic_q(3, 1, 1, 2, 2, 2)
for row in mdl.rows:
    print(row.family, row.multiplicity, [str(x) for x in row.entries])
print("orthogonal:", verify_orthogonality(mdl), "rows:", mdl.row_count)

# %%
g = metacyclic_coefficient_gram(mdl)
print(g)
other = [[5, 1], [1, 2]]
print("congruent to", other, ":", congruent(g, other))
print("S =", find_congruence(g, other))

# %%
print("max_k:", max_k(g).k, max_k(other).k, "closed form:", finallem_bound(3, 1, 1, 2, 2, 2))
