"""Covers built around a maximum matching whose members meet other boxes in
controlled ways.

Every box ``R`` is compared with every matching member ``M``:

* ``R`` contains a corner of ``M`` -- pierced by the corners of the matching;
* ``M`` holds at least half the corners of ``R`` -- ``R`` sticks out of ``M``
  across exactly one facet, on exactly one axis;
* anything else breaks the premise.

Boxes of the second kind meet one or two members.  Those meeting two bridge
a gap along one axis and become edges of a per-axis digraph on the matching;
those meeting one hang off a member ("pendant").  Both kinds are covered
member by member, with at most ``out-degree + d`` points each.

All functions here expect a clean family (no box contains another);
:func:`structured_cover` cleans its input first.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .errors import HypothesisViolation, InvariantViolation
from .exact import DEFAULT_BUDGET, Cover, Matching, NuOracle, check_cover, exact_nu, mask_of
from .geometry import (
    BoxFamily,
    clean,
    common_point,
    contains_corner,
    corners,
    corners_contained,
    intersects,
    separating_axis,
)
from .karolyi import slice_cover


class Interaction(enum.Enum):
    DISJOINT = "disjoint"
    HAS_CORNER = "box-has-corner-of-member"
    HALF_CORNERS = "member-has-half-corners-of-box"
    OTHER = "other"


def interaction(box, member) -> Interaction:
    """Tag one (box, member) pair; earlier tags win when several apply."""
    if not intersects(box, member):
        return Interaction.DISJOINT
    if contains_corner(box, member):
        return Interaction.HAS_CORNER
    if corners_contained(member, box) >= 2 ** (box.dim - 1):
        return Interaction.HALF_CORNERS
    return Interaction.OTHER


@dataclass(frozen=True)
class Classification:
    family: BoxFamily = field(repr=False)
    matching: Matching
    tags: tuple  # tags[box][position of member in matching]
    core: tuple  # boxes whose every interaction is disjoint or half-corners
    violations: tuple  # (box, member) pairs tagged OTHER

    @property
    def hypothesis_holds(self) -> bool:
        return not self.violations

    def corner_boxes(self) -> tuple:
        return tuple(k for k, row in enumerate(self.tags) if Interaction.HAS_CORNER in row)


def classify(f: BoxFamily, m: Matching, budget: int = DEFAULT_BUDGET, check_maximum: bool = True) -> Classification:
    if check_maximum:
        nu, _ = exact_nu(f, budget)
        if len(m) != nu:
            raise HypothesisViolation(f"matching of size {len(m)} is not maximum (ν = {nu})")
    members = [f.boxes[j] for j in m.indices]
    tags = []
    core = []
    violations = []
    for k, b in enumerate(f.boxes):
        row = tuple(interaction(b, M) for M in members)
        tags.append(row)
        if all(t in (Interaction.DISJOINT, Interaction.HALF_CORNERS) for t in row):
            core.append(k)
        violations.extend((k, j) for j, t in zip(m.indices, row) if t is Interaction.OTHER)
    return Classification(f, m, tuple(tags), tuple(core), tuple(violations))


def _max_sum(b) -> object:
    return sum(b.hi)


def swap_is_matching(f: BoxFamily, m: Matching, out: int, into: int) -> bool:
    """Whether replacing member ``out`` by box ``into`` leaves a matching."""
    r = f.boxes[into]
    return all(j == out or not intersects(r, f.boxes[j]) for j in m.indices)


def is_extremal(f: BoxFamily, m: Matching) -> bool:
    """No single swap yields a matching whose new member has every
    coordinate maximum strictly below the one it replaced."""
    for j in m.indices:
        M = f.boxes[j]
        for k in range(len(f)):
            if k in m:
                continue
            R = f.boxes[k]
            if all(a < b for a, b in zip(R.hi, M.hi)) and swap_is_matching(f, m, j, k):
                return False
    return True


def extremal_matching(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> Matching:
    """A maximum matching no swap can improve in the sum of coordinate maxima.

    Starts from the lexicographically smallest maximum matching and applies
    the first strictly improving swap in (member, box) index order until
    none is left.  Such a matching is extremal, and in particular no box
    meeting only one member can replace it with a smaller maximum on one
    axis and no larger one elsewhere.
    """
    _, m = exact_nu(f, budget)
    current = set(m.indices)
    while True:
        for j in sorted(current):
            M = f.boxes[j]
            improved = False
            for k in range(len(f)):
                if k in current:
                    continue
                R = f.boxes[k]
                if _max_sum(R) < _max_sum(M) and all(
                    i == j or not intersects(R, f.boxes[i]) for i in current
                ):
                    current = (current - {j}) | {k}
                    improved = True
                    break
            if improved:
                break
        else:
            return Matching(f, tuple(current))


@dataclass(frozen=True)
class WitnessGraph:
    """Digraph on matching members for one axis.

    ``edges`` maps ``(tail, head)`` (members with tail before head along the
    axis) to the sorted boxes bridging them; ``pendants`` lists
    ``(box, member)`` for boxes meeting only that member and sticking out of
    it along this axis.
    """

    axis: int
    vertices: tuple
    edges: dict
    pendants: tuple

    def witness(self, edge) -> int:
        return self.edges[edge][0]

    def out_neighbors(self, v) -> list:
        return sorted(h for t, h in self.edges if t == v)

    def out_degree(self, v) -> int:
        return sum(1 for t, _ in self.edges if t == v)

    def pendants_at(self, v) -> list:
        return [b for b, mem in self.pendants if mem == v]

    def boxes(self) -> set:
        out = {b for b, _ in self.pendants}
        for ws in self.edges.values():
            out.update(ws)
        return out


def build_witness_graphs(f: BoxFamily, m: Matching, classification: Classification | None = None) -> list:
    """One :class:`WitnessGraph` per axis, from the boxes of the half-corner core."""
    if classification is None:
        classification = classify(f, m, check_maximum=False)
    d = f.dim
    edges = [dict() for _ in range(d)]
    pendants = [[] for _ in range(d)]
    for k in classification.core:
        R = f.boxes[k]
        met = [j for j in m.indices if intersects(R, f.boxes[j])]
        if not met:
            raise InvariantViolation(f"box {k} misses every member, so the matching is not maximum", (k,))
        if len(met) > 2:
            raise InvariantViolation(f"box {k} meets {len(met)} members", (k, *met))
        if len(met) == 1:
            (j,) = met
            M = f.boxes[j]
            # axes along which R leaves M; in general position these are the
            # axes with incomparable projections, and shared endpoints
            # (grid-derived families) are handled the same way
            loose = [i for i in range(d) if not (M.lo[i] <= R.lo[i] and R.hi[i] <= M.hi[i])]
            if len(loose) != 1 or (R.lo[loose[0]] < M.lo[loose[0]] and R.hi[loose[0]] > M.hi[loose[0]]):
                raise InvariantViolation(f"box {k} is pendant at {j} on axes {loose}", (k, j))
            pendants[loose[0]].append((k, j))
            continue
        j1, j2 = met
        sep = separating_axis(f.boxes[j1], f.boxes[j2])
        if sep is None:
            raise InvariantViolation(f"members {j1}, {j2} intersect", (j1, j2))
        axis = sep.axis
        for i in range(d):
            if i != axis and not (
                f.boxes[j1].lo[i] <= R.lo[i] and R.hi[i] <= f.boxes[j1].hi[i]
                and f.boxes[j2].lo[i] <= R.lo[i] and R.hi[i] <= f.boxes[j2].hi[i]
            ):
                raise InvariantViolation(f"witness {k} of {j1}, {j2} is not confined off axis {axis}", (k, j1, j2))
        tail, head = (j1, j2) if sep.a_first else (j2, j1)
        edges[axis].setdefault((tail, head), []).append(k)
    return [
        WitnessGraph(i, m.indices, {e: tuple(sorted(ws)) for e, ws in sorted(edges[i].items())}, tuple(pendants[i]))
        for i in range(d)
    ]


def intersecting_witness_violations(f: BoxFamily, g: WitnessGraph) -> list:
    """Intersecting witness pairs ``(Q, R)`` of edges ``M1→M2`` and ``M3→M4``
    with ``M1 ≠ M4``, ``M2 ≠ M3`` and distinct edges."""
    bad = []
    labelled = [(w, e) for e, ws in g.edges.items() for w in ws]
    for (q, (m1, m2)), (r, (m3, m4)) in itertools.combinations(labelled, 2):
        if not intersects(f.boxes[q], f.boxes[r]):
            continue
        if not (m1 == m4 or m2 == m3 or (m1, m2) == (m3, m4)):
            bad.append((q, r))
    return bad


@dataclass(frozen=True)
class EdgeSelection:
    edges: tuple
    X: frozenset
    Y: frozenset


def digraph_split(vertices, edges) -> EdgeSelection:
    """Keep at least a quarter of the edges so that no vertex keeps both an
    incoming and an outgoing edge.

    Vertices are placed one at a time on the side (X or Y) opposite the one
    they share more edges with, ties going to Y; of the two cross
    directions the larger is returned (ties: edges from Y into X).
    """
    edges = [tuple(e) for e in edges]
    if any(t == h for t, h in edges):
        raise ValueError("self-loops are not allowed")
    X, Y = set(), set()
    incident: dict = {}
    for t, h in edges:
        incident.setdefault(t, []).append(h)
        incident.setdefault(h, []).append(t)
    for v in vertices:
        nbrs = incident.get(v, [])
        to_x = sum(1 for u in nbrs if u in X)
        to_y = sum(1 for u in nbrs if u in Y)
        if to_x >= to_y:
            Y.add(v)
        else:
            X.add(v)
    into_x = tuple(e for e in edges if e[1] in X and e[0] in Y)
    into_y = tuple(e for e in edges if e[1] in Y and e[0] in X)
    chosen = into_x if len(into_x) >= len(into_y) else into_y
    return EdgeSelection(chosen, frozenset(X), frozenset(Y))


def axis_cover_parts(f: BoxFamily, m: Matching, g: WitnessGraph, extremal: bool = False,
                     oracle: NuOracle | None = None, budget: int = DEFAULT_BUDGET) -> dict:
    """Per member ``M``: points covering its pendants and the witnesses of its out-edges."""
    if oracle is None:
        oracle = NuOracle(f, max(budget, len(f)))
    axis = g.axis
    d = f.dim
    parts = {}
    for v in g.vertices:
        M = f.boxes[v]
        plane = M.hi[axis]
        pend = g.pendants_at(v)
        heads = g.out_neighbors(v)
        groups = {h: list(g.edges[(v, h)]) for h in heads}
        nus = {h: oracle.nu(mask_of(ws)) for h, ws in groups.items()}
        if any(x >= 3 for x in nus.values()):
            raise InvariantViolation(f"member {v} has an edge with three disjoint witnesses", (v,))
        if sum(1 for x in nus.values() if x == 2) > 1:
            raise InvariantViolation(f"member {v} has two edges with two disjoint witnesses each", (v,))

        points = []
        merge_into = None
        if extremal and pend and heads:
            star = max(heads, key=lambda h: (nus[h], -h))
            if nus[star] == 2:
                merge_into = star
        if merge_into is not None:
            for k in pend:
                b = f.boxes[k]
                if not b.lo[axis] <= plane <= b.hi[axis]:
                    raise InvariantViolation(f"pendant {k} at extremal member {v} misses its hyperplane", (k, v))
            merged = sorted(set(pend) | set(groups[merge_into]))
            if oracle.nu(mask_of(merged)) > 2:
                raise InvariantViolation(f"pendants and witnesses at {v} hold three disjoint boxes", (v,))
            points.extend(_cover_group(f, merged, axis, plane, oracle, budget))
        elif pend:
            points.append(common_point(f.boxes[k] for k in pend))
        for h in heads:
            if h != merge_into:
                points.extend(_cover_group(f, groups[h], axis, plane, oracle, budget))

        cap = g.out_degree(v) + d - (1 if extremal and d >= 2 else 0)
        if len(set(points)) > cap:
            raise InvariantViolation(f"member {v} needed {len(set(points))} points, more than {cap}", (v,))
        parts[v] = tuple(sorted(set(points)))
    return parts


def _cover_group(f, idx, axis, plane, oracle, budget) -> list:
    nu = oracle.nu(mask_of(idx))
    if nu <= 1:
        return [common_point(f.boxes[k] for k in idx)]
    try:
        return list(slice_cover(f, idx, axis, plane, budget).points)
    except ValueError as exc:
        raise InvariantViolation(f"witness group does not meet x_{axis} = {plane}: {exc}") from exc


def cover_axis_family(f: BoxFamily, m: Matching, g: WitnessGraph, extremal: bool = False,
                      budget: int = DEFAULT_BUDGET) -> Cover:
    parts = axis_cover_parts(f, m, g, extremal, budget=budget)
    cover = Cover(f.dim, tuple(p for pts in parts.values() for p in pts))
    cap = (3 if extremal else 4) + f.dim
    if len(cover) > cap * len(m):
        raise InvariantViolation(f"axis {g.axis} needed {len(cover)} points, more than {cap}·{len(m)}")
    return cover


def structured_bound(d: int, nu: int, extremal: bool = False) -> int:
    return (2 ** d + ((3 if extremal else 4) + d) * d) * nu


@dataclass(frozen=True)
class StructuredCover:
    """Result of the core construction on a clean family."""

    cover: Cover
    corner_points: tuple
    graphs: tuple
    axis_parts: tuple  # per axis: {member: points}


def structured_core(f: BoxFamily, m: Matching, classification: Classification,
                    extremal: bool = False, budget: int = DEFAULT_BUDGET) -> StructuredCover:
    """Cover every box that contains a corner of a member or lies in the
    half-corner core.  Boxes tagged OTHER and containing no member corner are
    left to the caller."""
    oracle = NuOracle(f, max(budget, len(f)))
    corner_pts = set()
    for pos, j in enumerate(m.indices):
        holders = [f.boxes[k] for k, row in enumerate(classification.tags)
                   if k != j and row[pos] is Interaction.HAS_CORNER]
        used = [c for c in corners(f.boxes[j]) if any(b.contains_point(c) for b in holders)]
        # a member no other box reaches into still needs one point of its own
        corner_pts.update(used or [f.boxes[j].hi])
    graphs = build_witness_graphs(f, m, classification)
    parts = tuple(axis_cover_parts(f, m, g, extremal, oracle, budget) for g in graphs)
    pts = set(corner_pts)
    cap = (3 if extremal else 4) + f.dim
    for g, per_member in zip(graphs, parts):
        axis_pts = {p for ps in per_member.values() for p in ps}
        if len(axis_pts) > cap * len(m):
            raise InvariantViolation(f"axis {g.axis} needed {len(axis_pts)} points, more than {cap}·{len(m)}")
        pts |= axis_pts
    cover = Cover(f.dim, tuple(pts))
    if len(cover) > structured_bound(f.dim, len(m), extremal):
        raise InvariantViolation(f"{len(cover)} points exceed the structured bound for ν = {len(m)}")
    return StructuredCover(cover, tuple(sorted(corner_pts)), tuple(graphs), parts)


def prepare(f: BoxFamily, m: Matching | None, extremal: bool, budget: int) -> tuple:
    """Clean ``f`` and carry (or compute) the matching over to the clean family."""
    g, cmap = clean(f)
    if m is None:
        # the extremal matching is maximum too, and the generators certify
        # the corner conditions against it, so both variants start there
        mm = extremal_matching(g, budget)
    else:
        mm = Matching(g, tuple(cmap.target[i] for i in m.indices))
        if extremal and not is_extremal(g, mm):
            raise HypothesisViolation("supplied matching is not extremal on the cleaned family")
    return g, cmap, mm


def structured_cover(f: BoxFamily, m: Matching | None = None, extremal: bool = False,
                     budget: int = DEFAULT_BUDGET) -> Cover:
    """Pierce ``f`` with at most ``(2^d + (4+d)d)ν`` points (``(3+d)`` when extremal).

    Requires a maximum matching such that every box either misses a member,
    contains a corner of it, or has half its corners inside it.  When ``m``
    is omitted the extremal matching of the cleaned family is used.
    """
    g, cmap, mm = prepare(f, m, extremal, budget)
    cls = classify(g, mm, budget)
    if not cls.hypothesis_holds:
        k, j = cls.violations[0]
        raise HypothesisViolation(
            f"box {cmap.kept[k]} meets member {cmap.kept[j]} without a corner condition",
            (cmap.kept[k], cmap.kept[j]),
        )
    result = structured_core(g, mm, cls, extremal, budget)
    ok, missing = check_cover(f, result.cover)
    if not ok:
        raise InvariantViolation(f"structured cover misses box {missing}")
    return result.cover
