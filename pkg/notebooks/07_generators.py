# %% [markdown]
# # Seeded instance generators
#
# Every kind is deterministic in (kind, dim, n, seed). Endpoints are distinct
# integers per axis. Kinds with a premise use rejection sampling.

# %%
from piercing.generate import KINDS, GenSpec, generate, generate_with_stats

for kind in KINDS:
    dim = 1 if kind == "interval-1d" else 2
    r = 2 if kind in ("bounded-aspect", "adversarial-case3") else None
    out = generate_with_stats(GenSpec(kind, dim, 10, 0, r=r))
    print(f"{kind:20} n={len(out.family):3} acceptance={float(out.acceptance_rate):.2f}")

# %%
assert generate(GenSpec("cubes", 3, 8, 11)) == generate(GenSpec("cubes", 3, 8, 11))
