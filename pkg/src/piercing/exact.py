"""Ground-truth oracles: exact matching number, exact piercing number, and
Gallai's greedy stabbing for intervals.

Families are turned into intersection graphs stored as Python integer
bitmasks; every subset of a family is then just an int, which is what the
memoised oracles key on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, HypothesisViolation
from .geometry import BoxFamily, intersection_matrix

DEFAULT_BUDGET = 40


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple:
    return tuple(_bits(mask))


@dataclass(frozen=True)
class Matching:
    """Indices of pairwise disjoint boxes of ``family``."""

    family: BoxFamily = field(repr=False, compare=False)
    indices: tuple = ()

    def __post_init__(self):
        idx = tuple(sorted(set(self.indices)))
        boxes = self.family.boxes
        for a, b in itertools.combinations(idx, 2):
            if all(x <= w and y <= z for x, z, y, w in zip(boxes[a].lo, boxes[a].hi, boxes[b].lo, boxes[b].hi)):
                raise HypothesisViolation(f"boxes {a} and {b} intersect; not a matching", (a, b))
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return i in self.indices

    @property
    def boxes(self) -> tuple:
        return tuple(self.family.boxes[i] for i in self.indices)


@dataclass(frozen=True)
class Cover:
    """A finite point set, kept sorted and without duplicates."""

    dim: int
    points: tuple = ()

    def __post_init__(self):
        pts = tuple(sorted(set(tuple(p) for p in self.points)))
        for p in pts:
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {p} is not {self.dim}-dimensional")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def union(self, *others: "Cover") -> "Cover":
        pts = list(self.points)
        for o in others:
            if o.dim != self.dim:
                raise DimensionMismatch("cannot merge covers of different dimension")
            pts.extend(o.points)
        return Cover(self.dim, tuple(pts))

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [[str(x) for x in p] for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "Cover":
        from .geometry import as_scalar

        return cls(data["dim"], tuple(tuple(as_scalar(x) for x in p) for p in data["points"]))


class CoverCheck(NamedTuple):
    ok: bool
    first_uncovered: int | None


def uncovered_boxes(f: BoxFamily, c: Cover) -> list:
    if c.dim != f.dim:
        raise DimensionMismatch(f"cover of dimension {c.dim} for a family of dimension {f.dim}")
    return [k for k, b in enumerate(f.boxes) if not any(b.contains_point(p) for p in c.points)]


def check_cover(f: BoxFamily, c: Cover) -> CoverCheck:
    if c.dim != f.dim:
        raise DimensionMismatch(f"cover of dimension {c.dim} for a family of dimension {f.dim}")
    for k, b in enumerate(f.boxes):
        if not any(b.contains_point(p) for p in c.points):
            return CoverCheck(False, k)
    return CoverCheck(True, None)


def gallai_stab(f: BoxFamily) -> Cover:
    """Pierce a family of intervals with exactly ν points.

    Sweep by right endpoint; each time an interval is not yet pierced, its
    right endpoint becomes a point.  The intervals that triggered a point are
    pairwise disjoint, so the cover is optimal.
    """
    if f.dim != 1:
        raise DimensionMismatch(f"Gallai stabbing needs intervals, got dimension {f.dim}")
    points = []
    last = None
    for b in sorted(f.boxes, key=lambda b: (b.hi[0], b.lo[0])):
        if last is None or b.lo[0] > last:
            last = b.hi[0]
            points.append((last,))
    return Cover(1, tuple(points))


class IntersectionGraph:
    """Adjacency bitmasks of the closed-box intersection graph (no loops)."""

    def __init__(self, f: BoxFamily):
        self.n = len(f)
        meets = intersection_matrix(f)
        self.adj = []
        for i in range(self.n):
            row = meets[i].copy()
            row[i] = False
            self.adj.append(_row_mask(row))

    @property
    def all(self) -> int:
        return (1 << self.n) - 1


def _row_mask(row: np.ndarray) -> int:
    if not row.size:
        return 0
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def _clique_cover_exceeds(adj, cand: int, limit: int) -> int:
    """Greedy clique cover size of ``cand``, stopping once it passes ``limit``."""
    cliques = []
    for v in _bits(cand):
        a = adj[v]
        for k, c in enumerate(cliques):
            if a & c == c:
                cliques[k] = c | (1 << v)
                break
        else:
            cliques.append(1 << v)
            if len(cliques) > limit:
                break
    return len(cliques)


def max_independent_set(adj, cand: int) -> tuple:
    """Lexicographically smallest maximum independent set inside ``cand``.

    Returns ``(size, mask)``.  The search branches on the lowest remaining
    index, include first, so optima are met in lexicographic order and only
    strictly better sets replace the incumbent.  A greedy clique cover bounds
    each subtree.
    """
    best_mask = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        best_mask |= low
        rest &= ~adj[v] & ~low
    best = [bin(best_mask).count("1"), best_mask]

    def expand(size, chosen, pool):
        while pool:
            room = best[0] - size
            if _clique_cover_exceeds(adj, pool, room) <= room:
                return
            low = pool & -pool
            v = low.bit_length() - 1
            pool ^= low
            new_chosen = chosen | low
            if size + 1 > best[0]:
                best[0], best[1] = size + 1, new_chosen
            expand(size + 1, new_chosen, pool & ~adj[v])

    expand(0, 0, cand)
    return best[0], best[1]


class NuOracle:
    """Memoised exact matching numbers of subfamilies, keyed by index mask."""

    def __init__(self, f: BoxFamily, budget: int = DEFAULT_BUDGET):
        if len(f) > budget:
            raise BudgetExceeded(f"exact search over {len(f)} boxes exceeds budget {budget}")
        self.family = f
        self.graph = IntersectionGraph(f)
        self._cache: dict = {}

    def solve(self, mask: int) -> tuple:
        hit = self._cache.get(mask)
        if hit is None:
            hit = self._cache[mask] = max_independent_set(self.graph.adj, mask)
        return hit

    def nu(self, indices=None) -> int:
        return self.solve(self._mask(indices))[0]

    def matching(self, indices=None) -> Matching:
        return Matching(self.family, indices_of(self.solve(self._mask(indices))[1]))

    def _mask(self, indices) -> int:
        if indices is None:
            return self.graph.all
        if isinstance(indices, int):
            return indices
        return mask_of(indices)


def exact_nu(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> tuple:
    """``(ν, matching)`` with the lexicographically smallest optimal matching."""
    oracle = NuOracle(f, budget)
    size, mask = oracle.solve(oracle.graph.all)
    return size, Matching(f, indices_of(mask))


@dataclass(frozen=True)
class CandidateGrid:
    """Per-axis sorted lower endpoints.

    A point piercing a set of boxes can slide down to the coordinatewise
    maximum of their lower endpoints and still pierce them all, so points of
    this grid are enough for both τ and τ*.
    """

    axes: tuple

    @classmethod
    def from_family(cls, f: BoxFamily) -> "CandidateGrid":
        return cls(tuple(tuple(sorted({b.lo[i] for b in f.boxes})) for i in range(f.dim)))

    def points(self):
        return itertools.product(*self.axes)

    def __len__(self):
        total = 1
        for a in self.axes:
            total *= len(a)
        return total


def piercing_sets(f: BoxFamily, maximal: bool = True) -> dict:
    """Map ``mask -> point`` for the distinct sets of boxes pierced by grid points.

    With ``maximal`` only inclusion-maximal sets are kept; the canonical point
    of each set is the coordinatewise maximum of its lower endpoints.
    """
    if not len(f):
        return {}
    grid = CandidateGrid.from_family(f)
    per_axis = []
    for i, values in enumerate(grid.axes):
        per_axis.append([
            mask_of(k for k, b in enumerate(f.boxes) if b.lo[i] <= a <= b.hi[i]) for a in values
        ])
    seen = set()
    for combo in itertools.product(*per_axis):
        m = combo[0]
        for x in combo[1:]:
            m &= x
            if not m:
                break
        if m:
            seen.add(m)
    masks = sorted(seen, key=lambda m: (-bin(m).count("1"), m))
    if maximal:
        kept = []
        for m in masks:
            if not any(m & k == m for k in kept):
                kept.append(m)
        masks = kept
    return {m: _canonical_point(f, m) for m in masks}


def _canonical_point(f: BoxFamily, mask: int) -> tuple:
    members = [f.boxes[k] for k in _bits(mask)]
    return tuple(max(b.lo[i] for b in members) for i in range(f.dim))


def exact_tau(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> tuple:
    """``(τ, cover)``: a minimum piercing set, by branch and bound over grid points.

    Branching picks the uncovered box with the fewest candidate points; the
    bound is a greedy set of pairwise disjoint uncovered boxes, each of which
    needs its own point.
    """
    n = len(f)
    if n > budget:
        raise BudgetExceeded(f"exact search over {n} boxes exceeds budget {budget}")
    if n == 0:
        return 0, Cover(f.dim, ())
    graph = IntersectionGraph(f)
    cands = list(piercing_sets(f))
    containing = [[c for c in cands if c >> k & 1] for k in range(n)]
    # greedy disjoint selection in order of the first axis' upper endpoint is
    # an exact matching for intervals and a cheap bound elsewhere
    order = sorted(range(n), key=lambda k: (f.boxes[k].hi[0], k))
    adj = graph.adj

    def lower_bound(uncovered: int) -> int:
        blocked = 0
        count = 0
        for k in order:
            if uncovered >> k & 1 and not blocked >> k & 1:
                count += 1
                blocked |= adj[k] | (1 << k)
        return count

    # greedy upper bound
    uncovered = graph.all
    greedy = []
    while uncovered:
        c = max(cands, key=lambda m: (bin(m & uncovered).count("1"), -m))
        greedy.append(c)
        uncovered &= ~c
    best = [len(greedy), list(greedy)]

    def search(uncovered: int, chosen: list):
        if not uncovered:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= best[0]:
            return
        k = min(_bits(uncovered), key=lambda j: (len(containing[j]), j))
        options = sorted(containing[k], key=lambda m: (-bin(m & uncovered).count("1"), m))
        for c in options:
            chosen.append(c)
            search(uncovered & ~c, chosen)
            chosen.pop()

    search(graph.all, [])
    return best[0], Cover(f.dim, tuple(_canonical_point(f, m) for m in best[1]))
