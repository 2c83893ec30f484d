# %% [markdown]
# # Fractional piercing
#
# τ* comes from an exact simplex over the maximal piercing sets. The solver
# returns both the point weights and the box weights, and their totals agree.

# %%
from fractions import Fraction

from piercing.generate import GenSpec, generate
from piercing.lp import fractional_tau, max_corner_piercing, verify_fractional_bound

f = generate(GenSpec("cubes", 2, 10, 3))
sol = fractional_tau(f)
print(sol.value, sum(sol.point_weights.values(), Fraction(0)), sum(sol.box_weights.values(), Fraction(0)))

# %% [markdown]
# When every intersection happens at a corner, τ* stays within 2^d ν.

# %%
for d in (2, 3):
    g = generate(GenSpec("corner-intersecting", d, 9, 1))
    rep = verify_fractional_bound(g)
    print(d, rep.tau_star, rep.nu, rep.bound, max_corner_piercing(g))
