# %% [markdown]
# # Checking the machinery on groups we can count by hand
#
# For C_{p^n} x| N the character table is known, so the number of
# height-zero characters can be compared three ways: a closed formula, a
# brute-force class count, and the weighted sum over the Dynkin form.

# %%
from __future__ import annotations

from blockbounds import PrimePowerModulus, build_basis, k0_semidirect, semidirect_model
from blockbounds.cyclotomic import cyclic_subgroups
from blockbounds.models import conjugacy_count, semidirect_gram_sum

rows = []
for p, n in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]:
    mod = PrimePowerModulus(p, n)
    for h in cyclic_subgroups(mod):
        g = h.generator()
        mdl = semidirect_model(p, n, g)
        formula = k0_semidirect(p, n, h.r, h.s)
        k, k0 = conjugacy_count(p, n, g)
        summed = semidirect_gram_sum(mdl, build_basis(mod, h))
        rows.append((p**n, h.order, formula, k0, summed, k))

print(f"{'p^n':>4} {'|N|':>4} {'formula':>8} {'classes':>8} {'sum':>5} {'k':>4}")
for r in rows:
    print(f"{r[0]:>4} {r[1]:>4} {r[2]:>8} {r[3]:>8} {r[4]:>5} {r[5]:>4}")

assert all(r[2] == r[3] == r[4] for r in rows)
