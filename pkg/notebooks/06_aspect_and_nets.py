# %% [markdown]
# # Bounded aspect ratio and weak ε-nets
#
# In the plane, boxes with side ratio at most r are pierced by (14 + 2r²)ν
# points. Boxes crossing a member are stabbed on its midline.

# %%
from fractions import Fraction

from piercing.aspect import AspectInstance, build_aspect_cover, unpierced_heavy, weak_epsilon_net
from piercing.exact import exact_nu
from piercing.generate import GenSpec, generate
from piercing.geometry import clean

f, _ = clean(generate(GenSpec("adversarial-case3", 2, 0, 0, r=2)))
res = build_aspect_cover(AspectInstance(f, 2))
print(len(res.cover), AspectInstance(f, 2).bound(exact_nu(f)[0]), res.crossing_points)

# %% [markdown]
# A weak ε-net pierces every r-bounded rectangle holding an ε fraction of
# the points. Minimal heavy rectangles form the family handed to the cover.

# %%
pts = [(x * 3 % 17, x * 7 % 19) for x in range(30)]
net = weak_epsilon_net(pts, Fraction(1, 4), 2)
print(len(net.family), net.nu, len(net.cover), unpierced_heavy(pts, Fraction(1, 4), 2, net.cover))
