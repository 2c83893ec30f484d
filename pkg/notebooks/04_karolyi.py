# %% [markdown]
# # Recursive halving cover
#
# Split along the first axis where the left part holds half the matching,
# recurse on both sides and on the hyperplane slice. Size stays within
# ν(1 + log₂ν)^(d−1).

# %%
from piercing.exact import check_cover, exact_nu, exact_tau
from piercing.generate import GenSpec, generate
from piercing.karolyi import karolyi_bound, karolyi_cover, nu_two_cover

for seed in range(5):
    f = generate(GenSpec("random-boxes", 3, 12, seed))
    c = karolyi_cover(f)
    nu = exact_nu(f)[0]
    print(seed, nu, exact_tau(f)[0], len(c), karolyi_bound(nu, 3), check_cover(f, c).ok)

# %% [markdown]
# With ν = 2, d + 1 points are enough.

# %%
seed = 0
while exact_nu(f := generate(GenSpec("random-boxes", 2, 6, seed)))[0] != 2:
    seed += 1
print(seed, nu_two_cover(f).points)
