# %% [markdown]
# # Exact ν and τ
#
# ν is a maximum independent set of the intersection graph. τ is a minimum
# hitting set over the candidate grid. Both are exhaustive and guarded by a
# size budget.

# %%
from piercing import BoxFamily, box, exact_nu, exact_tau, gallai_stab
from piercing.exact import check_cover
from piercing.generate import GenSpec, generate

# five boxes whose intersection graph is a 5-cycle
pentagon = BoxFamily(2, (
    box((0, 4), (0, 2)), box((3, 6), (1, 8)), box((1, 5), (7, 9)),
    box((0, 2), (4, 8)), box((0, 1), (1, 5)),
))
nu, m = exact_nu(pentagon)
tau, cover = exact_tau(pentagon)
print("nu", nu, m.indices, "tau", tau, cover.points)

# %% [markdown]
# On intervals the greedy stabbing by right endpoints is optimal.

# %%
f = generate(GenSpec("interval-1d", 1, 30, 4))
c = gallai_stab(f)
print(len(c), exact_nu(f)[0], exact_tau(f)[0], check_cover(f, c).ok)
