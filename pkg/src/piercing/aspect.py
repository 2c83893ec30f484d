"""Planar covers for rectangles of bounded aspect ratio, and weak ε-nets.

Against an extremal maximum matching every rectangle ``R`` of a clean
family falls into one of three cases:

1. ``R`` contains a corner of some member;
2. every member ``R`` meets holds at least two corners of ``R`` (the
   structured core);
3. otherwise ``R`` crosses some member ``M`` along an axis ``i``:
   ``p_i(R) ⊇ p_i(M)``.

Cases 1 and 2 go to the structured cover (14ν points in the plane).  The
rectangles crossing ``(M, i)`` share the segment of the midline of ``M``
along ``i``, so stabbing their other projections with the interval greedy
pierces them all; the aspect bound allows at most ``r²`` disjoint ones.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, HypothesisViolation, InvariantViolation
from .exact import DEFAULT_BUDGET, Cover, Matching, check_cover, exact_nu, gallai_stab
from .geometry import AxisBox, BoxFamily, Interval, Scalar, as_scalar, aspect_ratio, clean, intersects
from .structured import Interaction, StructuredCover, classify, extremal_matching, structured_core


@dataclass(frozen=True)
class AspectInstance:
    family: BoxFamily
    r: Scalar

    def __post_init__(self):
        r = as_scalar(self.r)
        if r < 1:
            raise ValueError(f"aspect bound must be at least 1, got {r}")
        object.__setattr__(self, "r", r)
        if self.family.dim != 2:
            raise HypothesisViolation(f"aspect covers are planar; got dimension {self.family.dim}")
        for k, b in enumerate(self.family.boxes):
            if aspect_ratio(b) > r:
                raise HypothesisViolation(f"rectangle {k} has aspect ratio {aspect_ratio(b)} > {r}", (k,))

    def bound(self, nu: int) -> Scalar:
        return as_scalar((14 + 2 * Fraction(self.r) ** 2) * nu)


@dataclass(frozen=True)
class CaseTag:
    case: int
    member: int | None = None  # family index of M, case 3 only
    axis: int | None = None

    def __str__(self):
        return f"case{self.case}" if self.case != 3 else f"case3(M={self.member}, axis={self.axis})"


def crosses(r: AxisBox, m: AxisBox, axis: int) -> bool:
    """``r`` meets ``m`` and spans it along ``axis``."""
    return intersects(r, m) and r.lo[axis] <= m.lo[axis] and m.hi[axis] <= r.hi[axis]


def classify_cases(inst: AspectInstance, m: Matching, classification=None) -> tuple:
    """One :class:`CaseTag` per rectangle, lowest case first.

    Case 3 rectangles are attributed to the smallest (member, axis) they cross.
    """
    f = inst.family
    if classification is None:
        classification = classify(f, m, check_maximum=False)
    core = set(classification.core)
    tags = []
    for k, row in enumerate(classification.tags):
        if Interaction.HAS_CORNER in row:
            tags.append(CaseTag(1))
            continue
        if k in core:
            tags.append(CaseTag(2))
            continue
        R = f.boxes[k]
        hit = next(
            ((j, i) for j in m.indices for i in range(2) if crosses(R, f.boxes[j], i)),
            None,
        )
        if hit is None:
            raise InvariantViolation(f"rectangle {k} fits none of the three cases", (k,))
        tags.append(CaseTag(3, *hit))
    return tuple(tags)


@dataclass(frozen=True)
class AspectCover:
    cover: Cover
    matching: Matching
    tags: tuple
    structured: StructuredCover
    crossing_points: dict  # (member, axis) -> points stabbing its case-3 rectangles


def _midpoint(iv: Interval) -> Scalar:
    return as_scalar(Fraction(iv.lo + iv.hi, 2))


def build_aspect_cover(inst: AspectInstance, budget: int = DEFAULT_BUDGET) -> AspectCover:
    """Cover a clean instance; see :func:`aspect_cover` for arbitrary input."""
    f = inst.family
    m = extremal_matching(f, budget)
    cls = classify(f, m, check_maximum=False)
    tags = classify_cases(inst, m, cls)
    # the structured construction only ever looks at corner holders and the core
    core = structured_core(f, m, cls, extremal=True, budget=budget)

    groups: dict = {}
    for k, t in enumerate(tags):
        if t.case == 3:
            groups.setdefault((t.member, t.axis), []).append(k)
    limit = Fraction(inst.r) ** 2
    crossing = {}
    for (j, i), idx in sorted(groups.items()):
        other = 1 - i
        stab = gallai_stab(BoxFamily(1, tuple(AxisBox((f.boxes[k].lo[other],), (f.boxes[k].hi[other],)) for k in idx)))
        if len(stab) > limit:
            raise InvariantViolation(
                f"{len(stab)} crossing stabs for member {j} along axis {i}, more than r² = {limit}", (j, i)
            )
        fixed = _midpoint(f.boxes[j].interval(i))
        pts = []
        for (v,) in stab.points:
            p = [None, None]
            p[i], p[other] = fixed, v
            pts.append(tuple(p))
        for k in idx:
            if not any(f.boxes[k].contains_point(p) for p in pts):
                raise InvariantViolation(f"crossing rectangle {k} missed by the stabs of member {j}", (k, j))
        crossing[(j, i)] = tuple(pts)

    cover = core.cover.union(Cover(2, tuple(p for ps in crossing.values() for p in ps)))
    if len(cover) > inst.bound(len(m)):
        raise InvariantViolation(f"{len(cover)} points exceed (14+2r²)ν = {inst.bound(len(m))}")
    return AspectCover(cover, m, tags, core, crossing)


def aspect_cover(inst: AspectInstance, budget: int = DEFAULT_BUDGET) -> Cover:
    """Pierce an ``r``-bounded planar family with at most ``(14 + 2r²)ν`` points."""
    g, _ = clean(inst.family)
    result = build_aspect_cover(AspectInstance(g, inst.r), budget)
    ok, missing = check_cover(inst.family, result.cover)
    if not ok:
        raise InvariantViolation(f"aspect cover misses rectangle {missing}")
    return result.cover


# ---------------------------------------------------------------- weak nets


def _scaled(values: list) -> list:
    scale = 1
    for v in values:
        if isinstance(v, Fraction):
            scale = math.lcm(scale, v.denominator)
    return [int(v * scale) for v in values]


@dataclass(frozen=True)
class HeavyGrid:
    """All rectangles with corners on the coordinate grid of a point set,
    indexed ``[a, b, c, d]`` for ``[xs[a], xs[b]] × [ys[c], ys[d]]``."""

    xs: tuple
    ys: tuple
    heavy: np.ndarray  # nondegenerate, r-bounded, holding ≥ ε·n points

    def rectangle(self, a, b, c, d) -> AxisBox:
        return AxisBox((self.xs[a], self.ys[c]), (self.xs[b], self.ys[d]))

    def pierced_by(self, points) -> np.ndarray:
        gx, px = _scaled_pair(self.xs, points, 0)
        gy, py = _scaled_pair(self.ys, points, 1)
        hit = np.zeros(self.heavy.shape, dtype=bool)
        for x, y in zip(px, py):
            ax = np.array([g <= x for g in gx], dtype=bool)
            bx = np.array([g >= x for g in gx], dtype=bool)
            cy = np.array([g <= y for g in gy], dtype=bool)
            dy = np.array([g >= y for g in gy], dtype=bool)
            hit |= ax[:, None, None, None] & bx[None, :, None, None] & cy[None, None, :, None] & dy[None, None, None, :]
        return hit


def _scaled_pair(grid, points, axis):
    values = list(grid) + [p[axis] for p in points]
    ints = _scaled(values)
    return ints[: len(grid)], ints[len(grid):]


def heavy_grid(points, eps, r, max_cells: int = 5_000_000) -> HeavyGrid:
    pts = [tuple(as_scalar(x) for x in p) for p in points]
    if any(len(p) != 2 for p in pts):
        raise ValueError("weak nets are built for planar point sets")
    eps, r = Fraction(as_scalar(eps)), Fraction(as_scalar(r))
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if r < 1:
        raise ValueError(f"aspect bound must be at least 1, got {r}")
    xs = tuple(sorted({p[0] for p in pts}))
    ys = tuple(sorted({p[1] for p in pts}))
    nx, ny = len(xs), len(ys)
    if (nx * ny) ** 2 > max_cells:
        raise BudgetExceeded(f"{(nx * ny) ** 2} grid rectangles exceed the budget {max_cells}")
    xi = {v: k for k, v in enumerate(xs)}
    yi = {v: k for k, v in enumerate(ys)}
    grid = np.zeros((nx + 1, ny + 1), dtype=np.int64)
    for x, y in pts:
        grid[xi[x] + 1, yi[y] + 1] += 1
    P = grid.cumsum(0).cumsum(1)
    # count[a, b, c, d] = points in [xs[a], xs[b]] × [ys[c], ys[d]]
    Pb, Pa = P[1:, :], P[:-1, :]
    upper = Pb[:, 1:][None, :, None, :] - Pb[:, :-1][None, :, :, None]
    lower = Pa[:, 1:][:, None, None, :] - Pa[:, :-1][:, None, :, None]
    count = upper - lower
    A, C = np.arange(nx), np.arange(ny)
    need = math.ceil(eps * len(pts))
    # one common scale, so widths and heights stay comparable
    both = _scaled(list(xs) + list(ys))
    sx, sy = both[:nx], both[nx:]
    big = max((abs(v) for v in sx + sy), default=0) * max(r.numerator, r.denominator)
    dtype = np.int64 if big < 2**61 else object
    X = np.array(sx, dtype=dtype)
    Y = np.array(sy, dtype=dtype)
    w = X[None, :] - X[:, None]  # [a, b]
    h = Y[None, :] - Y[:, None]  # [c, d]
    p, q = r.numerator, r.denominator
    ww = w[:, :, None, None]
    hh = h[None, None, :, :]
    heavy = (
        (A[:, None] < A[None, :])[:, :, None, None]
        & (C[:, None] < C[None, :])[None, None, :, :]
        & (count >= need)
        & (q * ww <= p * hh)
        & (q * hh <= p * ww)
    )
    return HeavyGrid(xs, ys, np.asarray(heavy, dtype=bool))


def minimal_heavy(grid: HeavyGrid) -> np.ndarray:
    """Heavy grid rectangles containing no other heavy grid rectangle."""
    H = grid.heavy
    # S[a, b, c, d]: some heavy rectangle lies inside [a, b] × [c, d]
    S = H[::-1].copy()
    S = np.logical_or.accumulate(S, axis=0)[::-1]
    S = np.logical_or.accumulate(S, axis=1)
    S = np.logical_or.accumulate(S[:, :, ::-1], axis=2)[:, :, ::-1]
    S = np.logical_or.accumulate(S, axis=3)
    inner = np.zeros_like(H)
    inner[:-1] |= S[1:]
    inner[:, 1:] |= S[:, :-1]
    inner[:, :, :-1] |= S[:, :, 1:]
    inner[:, :, :, 1:] |= S[:, :, :, :-1]
    return H & ~inner


def heavy_rectangles(points, eps, r) -> BoxFamily:
    """The inclusion-minimal heavy ``r``-bounded grid rectangles, as a family.

    Every heavy grid rectangle contains one of them, so piercing this
    family pierces all heavy grid rectangles.
    """
    grid = heavy_grid(points, eps, r)
    boxes = tuple(grid.rectangle(*map(int, idx)) for idx in np.argwhere(minimal_heavy(grid)))
    return BoxFamily(2, boxes)


@dataclass(frozen=True)
class WeakNet:
    cover: Cover
    family: BoxFamily
    nu: int


def weak_epsilon_net(points, eps, r, budget: int = 2000) -> WeakNet:
    """Points meeting every ``r``-bounded grid rectangle that holds at least
    ``ε·n`` of the input points, at most ``(14 + 2r²)/ε`` of them."""
    eps_q = Fraction(as_scalar(eps))
    fam = heavy_rectangles(points, eps, r)
    if len(fam) > budget:
        raise BudgetExceeded(f"{len(fam)} heavy rectangles exceed the budget {budget}")
    budget = max(budget, len(fam))
    nu, _ = exact_nu(fam, budget)
    if nu > 1 / eps_q:
        raise InvariantViolation(f"{nu} disjoint heavy rectangles, more than 1/ε = {1 / eps_q}")
    inst = AspectInstance(fam, r)
    cover = aspect_cover(inst, budget) if len(fam) else Cover(2)
    limit = (14 + 2 * Fraction(inst.r) ** 2) / eps_q
    if len(cover) > limit:
        raise InvariantViolation(f"net of {len(cover)} points exceeds (14+2r²)/ε = {limit}")
    return WeakNet(cover, fam, nu)


def unpierced_heavy(points, eps, r, net: Cover) -> list:
    """Heavy grid rectangles containing no net point."""
    grid = heavy_grid(points, eps, r)
    hit = grid.pierced_by(net.points) if len(net) else np.zeros_like(grid.heavy)
    return [grid.rectangle(*map(int, idx)) for idx in np.argwhere(grid.heavy & ~hit)]


def points_to_json(points) -> dict:
    return {"points": [[str(x) for x in p] for p in points]}


def points_from_json(data: dict) -> list:
    return [tuple(as_scalar(x) for x in p) for p in data["points"]]


def dumps_points(points) -> str:
    return json.dumps(points_to_json(points))


def loads_points(text: str) -> list:
    return points_from_json(json.loads(text, parse_float=Fraction))
