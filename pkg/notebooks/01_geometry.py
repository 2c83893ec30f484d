# %% [markdown]
# # Boxes and their relations
#
# Closed axis-parallel boxes with exact coordinates. Integral values stay
# `int`, everything else becomes a `Fraction`.

# %%
from fractions import Fraction

from piercing import BoxFamily, box
from piercing.geometry import clean, common_point, corners, intersect_at_corner, intersects, separating_axis

a = box((0, 10), (0, 10))
b = box((8, 13), (8, 13))
c = box((Fraction(1, 2), 3), (20, 30))
print(a, b, c)

# %% [markdown]
# Two boxes meet exactly when every axis projection overlaps. Otherwise some
# axis separates them.

# %%
print(intersects(a, b), intersect_at_corner(a, b), common_point([a, b]))
print(intersects(a, c), separating_axis(a, c))
print(list(corners(a)))

# %% [markdown]
# Cleaning drops every box that contains another one. The map records where
# each original box went.

# %%
f = BoxFamily(2, (a, b, c, box((1, 9), (1, 9))))
g, cmap = clean(f)
print(len(f), "->", len(g), cmap)
print(f.dumps())
