"""Brute-force oracles and hypothesis strategies shared by the tests.

The oracles deliberately avoid the library's search code: they enumerate
subsets and every endpoint grid point directly.
"""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from piercing.geometry import AxisBox, BoxFamily


def brute_intersects(a, b):
    return all(max(a.lo[i], b.lo[i]) <= min(a.hi[i], b.hi[i]) for i in range(a.dim))


def brute_nu(f):
    n = len(f)
    boxes = f.boxes
    for k in range(n, 0, -1):
        for sub in itertools.combinations(range(n), k):
            if all(not brute_intersects(boxes[a], boxes[b]) for a, b in itertools.combinations(sub, 2)):
                return k
    return 0


def grid_points(f):
    axes = [sorted({v for b in f.boxes for v in (b.lo[i], b.hi[i])}) for i in range(f.dim)]
    return list(itertools.product(*axes))


def coverage_masks(f):
    masks = set()
    for p in grid_points(f):
        m = 0
        for k, b in enumerate(f.boxes):
            if b.contains_point(p):
                m |= 1 << k
        if m:
            masks.add(m)
    return sorted(masks)


def brute_tau(f):
    n = len(f)
    if n == 0:
        return 0
    full = (1 << n) - 1
    masks = coverage_masks(f)
    for k in range(1, n + 1):
        for combo in itertools.combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    raise AssertionError("unreachable: one point per box always works")


def lp_float(f):
    """τ* by scipy's floating point solver, for cross-checking only."""
    import numpy as np
    from scipy.optimize import linprog

    masks = coverage_masks(f)
    n = len(f)
    A = np.array([[1.0 if m >> k & 1 else 0.0 for k in range(n)] for m in masks])
    res = linprog(-np.ones(n), A_ub=A, b_ub=np.ones(len(masks)), bounds=[(0, None)] * n, method="highs")
    assert res.status == 0
    return -res.fun


def disjoint_boxes(k, d, side=3, gap=10):
    return BoxFamily(d, tuple(AxisBox(tuple([gap * j] * d), tuple([gap * j + side] * d)) for j in range(k)))


# five rectangles whose intersection graph is a 5-cycle: ν = 2, τ* = 5/2, τ = 3
PENTAGON = BoxFamily(2, tuple(
    AxisBox(lo, hi)
    for lo, hi in [((0, 0), (4, 1)), ((3, 0), (4, 4)), ((1, 3), (4, 4)), ((1, 2), (2, 4)), ((0, 0), (1, 2))]
))


@st.composite
def boxes(draw, d=None, lo=0, hi=12, max_n=8, min_n=0):
    d = draw(st.integers(1, 3)) if d is None else d
    n = draw(st.integers(min_n, max_n))
    out = []
    for _ in range(n):
        a = [draw(st.integers(lo, hi - 1)) for _ in range(d)]
        b = [draw(st.integers(x + 1, hi)) for x in a]
        out.append(AxisBox(tuple(a), tuple(b)))
    return BoxFamily(d, tuple(out))


@st.composite
def rational_boxes(draw, d=2, max_n=5):
    q = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    n = draw(st.integers(0, max_n))
    out = []
    for _ in range(n):
        a = [draw(q) for _ in range(d)]
        s = [draw(st.fractions(min_value=Fraction(1, 7), max_value=4, max_denominator=7)) for _ in range(d)]
        out.append(AxisBox(tuple(a), tuple(x + y for x, y in zip(a, s))))
    return BoxFamily(d, tuple(out))
