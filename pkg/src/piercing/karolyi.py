"""Recursive hyperplane-sweep cover with at most ν(1 + log₂ν)^{d-1} points.

The sweep picks the leftmost hyperplane ``x = a*`` on the current first axis
such that the boxes lying weakly left of it already hold half of a maximum
matching.  Boxes strictly left and strictly right are covered recursively
in the same dimension; boxes crossing the hyperplane are sliced by it and
covered one dimension down.

Slicing never changes which pairs of crossing boxes intersect, so every
matching number in the recursion is read off the intersection graph of the
input family through one shared memoised oracle.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import DimensionMismatch, HypothesisViolation, InvariantViolation
from .exact import DEFAULT_BUDGET, Cover, NuOracle, check_cover, mask_of
from .geometry import BoxFamily, Scalar, lift_point


@dataclass(frozen=True)
class SliceContext:
    """Axes pinned to hyperplane values on the way down the recursion."""

    pins: tuple = ()  # ((axis, value), ...)

    def pin(self, axis: int, value: Scalar) -> "SliceContext":
        if any(a == axis for a, _ in self.pins):
            raise ValueError(f"axis {axis} is already pinned")
        return SliceContext(self.pins + ((axis, value),))

    def lift(self, free_axes: tuple, coords: tuple, dim: int) -> tuple:
        point = [None] * dim
        for a, v in self.pins:
            point[a] = v
        for a, v in zip(free_axes, coords):
            point[a] = v
        return tuple(point)


def karolyi_bound(nu: int, d: int) -> float:
    if nu <= 0:
        return 0.0
    return nu * (1 + math.log2(nu)) ** (d - 1)


def within_karolyi_bound(size: int, nu: int, d: int) -> bool:
    # the bound is irrational in general; integers are compared with a
    # relative slack far below the gap to the next integer
    return size <= karolyi_bound(nu, d) * (1 + 1e-12)


def _threshold(f: BoxFamily, oracle: NuOracle, idx: list, axis: int, target: int) -> Scalar:
    his = sorted({f.boxes[k].hi[axis] for k in idx})

    def reached(a):
        return oracle.nu(mask_of(k for k in idx if f.boxes[k].hi[axis] <= a)) >= target

    # ν(F_a) is monotone in a, so bisect over the candidate endpoints
    pos = bisect.bisect_left(range(len(his)), True, key=lambda j: reached(his[j]))
    if pos == len(his):
        raise InvariantViolation("no hyperplane reaches half the matching number")
    return his[pos]


def split_threshold(f: BoxFamily, axis: int = 0, budget: int = DEFAULT_BUDGET) -> Scalar:
    """Smallest ``a`` with ν({F : F ⊆ {x_axis ≤ a}}) ≥ ⌈ν(f)/2⌉."""
    if not 0 <= axis < f.dim:
        raise ValueError(f"axis {axis} out of range for dimension {f.dim}")
    oracle = NuOracle(f, budget)
    idx = list(range(len(f)))
    nu = oracle.nu(mask_of(idx))
    if nu < 1:
        raise HypothesisViolation("split threshold needs a nonempty family")
    return _threshold(f, oracle, idx, axis, -(-nu // 2))


def partition(f: BoxFamily, a: Scalar, axis: int = 0, indices=None) -> tuple:
    """Split indices into (strictly left of, crossing, strictly right of) ``x_axis = a``."""
    left, cross, right = [], [], []
    for k in (range(len(f)) if indices is None else indices):
        b = f.boxes[k]
        if b.hi[axis] < a:
            left.append(k)
        elif b.lo[axis] <= a:
            cross.append(k)
        else:
            right.append(k)
    return left, cross, right


class _Recursion:
    def __init__(self, f: BoxFamily, budget: int):
        self.f = f
        self.oracle = NuOracle(f, budget)

    def cover(self, idx: list, axes: tuple, ctx: SliceContext) -> list:
        if not idx:
            return []
        f = self.f
        if len(axes) == 1:
            (axis,) = axes
            points = []
            last = None
            for k in sorted(idx, key=lambda k: (f.boxes[k].hi[axis], f.boxes[k].lo[axis])):
                b = f.boxes[k]
                if last is None or b.lo[axis] > last:
                    last = b.hi[axis]
                    points.append(ctx.lift(axes, (last,), f.dim))
            return points
        nu = self.oracle.nu(mask_of(idx))
        if nu <= 1:
            coords = tuple(max(f.boxes[k].lo[a] for k in idx) for a in axes)
            return [ctx.lift(axes, coords, f.dim)]
        axis = axes[0]
        a_star = _threshold(f, self.oracle, idx, axis, -(-nu // 2))
        left, cross, right = partition(f, a_star, axis, idx)
        if not cross:
            raise InvariantViolation("the splitting hyperplane meets no box")
        return (
            self.cover(left, axes, ctx)
            + self.cover(right, axes, ctx)
            + self.cover(cross, axes[1:], ctx.pin(axis, a_star))
        )


def karolyi_cover(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> Cover:
    rec = _Recursion(f, budget)
    points = rec.cover(list(range(len(f))), tuple(range(f.dim)), SliceContext())
    cover = Cover(f.dim, tuple(points))
    ok, missing = check_cover(f, cover)
    if not ok:
        raise InvariantViolation(f"recursive cover misses box {missing}")
    nu = rec.oracle.nu()
    if not within_karolyi_bound(len(cover), nu, f.dim):
        raise InvariantViolation(f"{len(cover)} points exceed ν(1+log ν)^(d-1) for ν = {nu}")
    return cover


def nu_two_cover(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> Cover:
    """At most d + 1 points for a family without three pairwise disjoint boxes."""
    rec = _Recursion(f, budget)
    if rec.oracle.nu() > 2:
        raise HypothesisViolation("family has three pairwise disjoint boxes")
    points = rec.cover(list(range(len(f))), tuple(range(f.dim)), SliceContext())
    cover = Cover(f.dim, tuple(points))
    if len(cover) > f.dim + 1:
        raise InvariantViolation(f"{len(cover)} points for a ν ≤ 2 family in dimension {f.dim}")
    if not check_cover(f, cover).ok:
        raise InvariantViolation("ν = 2 cover misses a box")
    return cover


def slice_cover(f: BoxFamily, indices, axis: int, value: Scalar, budget: int = DEFAULT_BUDGET) -> Cover:
    """Cover boxes meeting ``x_axis = value`` (ν ≤ 2) by covering their slices."""
    if f.dim < 2:
        raise DimensionMismatch("slicing needs dimension at least 2")
    sliced = f.slice(indices, axis, value)
    low = nu_two_cover(sliced, budget)
    return Cover(f.dim, tuple(lift_point(p, axis, value) for p in low.points))
