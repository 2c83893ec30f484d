# %% [markdown]
# # Sweeps
#
# A sweep runs chosen algorithms over seeded instances, with ν, τ and τ*
# oracles, and writes one CSV row per instance plus a JSON summary.

# %%
from piercing.harness import SweepSpec, dumps_summary, summarize, sweep, to_csv

algos = ("karolyi", "structured", "exact-tau")
rows = sweep(SweepSpec("cubes", 2, 10, 0, 10, None, algos))
print(to_csv(rows, algos))
print(dumps_summary(summarize(rows, algos, "cubes")))
