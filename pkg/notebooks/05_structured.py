# %% [markdown]
# # Covers around a matching
#
# Every box either holds a corner of some matching member or sticks out of
# the members it meets across one facet. The second kind forms per-axis
# witness digraphs and pendants, which are pierced member by member.

# %%
from piercing.exact import check_cover, exact_nu
from piercing.generate import GenSpec, generate
from piercing.geometry import clean
from piercing.structured import (
    build_witness_graphs, classify, digraph_split, extremal_matching, structured_bound, structured_cover,
)

f, _ = clean(generate(GenSpec("thm18-hypothesis", 2, 14, 15)))
m = extremal_matching(f)
cls = classify(f, m)
print("matching", m.indices, "core", cls.core)
for g in build_witness_graphs(f, m, cls):
    print("axis", g.axis, "edges", g.edges, "pendants", g.pendants)

# %%
print(digraph_split(range(4), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))

# %%
nu = exact_nu(f)[0]
for ext in (False, True):
    c = structured_cover(f, extremal=ext)
    print(ext, len(c), structured_bound(2, nu, ext), check_cover(f, c).ok)
