"""Exact axis-parallel boxes and the predicates every cover construction uses.

Coordinates are exact rationals. Integral values are stored as ``int`` and
everything else as :class:`fractions.Fraction`; both compare exactly, and the
integer fast path matters because the search routines compare coordinates
millions of times.

Boxes are closed, so boxes that only touch along a face, edge or corner
intersect.  Axes are numbered from 0.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, HypothesisViolation

Scalar = Union[int, Fraction]
Point = tuple  # tuple of Scalars


def as_scalar(value) -> Scalar:
    """Convert ``value`` to a canonical exact scalar.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"-1.25"`` or
    ``"7/3"``.  Floats are rejected: they carry binary rounding that the
    caller almost certainly did not intend.

    >>> as_scalar("6/4")
    Fraction(3, 2)
    >>> as_scalar("2.0")
    2
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float coordinate {value!r}; pass a string or Fraction")
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else q


def format_scalar(value: Scalar) -> str:
    return str(value)


class Interval(NamedTuple):
    lo: Scalar
    hi: Scalar

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def precedes(self, other: "Interval") -> bool:
        """``self ≺ other``: self ends strictly before other starts."""
        return self.hi < other.lo

    def issubset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo


@dataclass(frozen=True)
class AxisBox:
    """A closed box ``[lo_0, hi_0] × ... × [lo_{d-1}, hi_{d-1}]``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(as_scalar(v) for v in self.lo)
        hi = tuple(as_scalar(v) for v in self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("lo and hi have different lengths")
        if not lo:
            raise ValueError("a box needs at least one axis")
        for i, (a, b) in enumerate(zip(lo, hi)):
            if not a < b:
                raise ValueError(f"side {i} of box is degenerate or reversed: [{a}, {b}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_intervals(cls, intervals: Iterable[Sequence]) -> "AxisBox":
        pairs = [tuple(iv) for iv in intervals]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def intervals(self) -> tuple:
        return tuple(Interval(a, b) for a, b in zip(self.lo, self.hi))

    def interval(self, axis: int) -> Interval:
        return Interval(self.lo[axis], self.hi[axis])

    def side(self, axis: int) -> Scalar:
        return self.hi[axis] - self.lo[axis]

    def contains_point(self, p: Sequence) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))

    def contains_box(self, other: "AxisBox") -> bool:
        return all(a <= c and e <= b for a, b, c, e in zip(self.lo, self.hi, other.lo, other.hi))

    def drop_axis(self, axis: int) -> "AxisBox":
        return AxisBox(self.lo[:axis] + self.lo[axis + 1:], self.hi[:axis] + self.hi[axis + 1:])

    def to_json(self) -> list:
        return [[format_scalar(a), format_scalar(b)] for a, b in zip(self.lo, self.hi)]

    def __repr__(self):
        sides = " × ".join(f"[{a}, {b}]" for a, b in zip(self.lo, self.hi))
        return f"AxisBox({sides})"


def box(*intervals) -> AxisBox:
    """Shorthand: ``box((0, 1), (2, 3))``."""
    return AxisBox.from_intervals(intervals)


def _check_dims(a: AxisBox, b: AxisBox):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension {a.dim} vs {b.dim}")


def intersects(a: AxisBox, b: AxisBox) -> bool:
    _check_dims(a, b)
    return all(al <= bh and bl <= ah for al, ah, bl, bh in zip(a.lo, a.hi, b.lo, b.hi))


class Separation(NamedTuple):
    axis: int
    a_first: bool  # True for a ≺_axis b, False for b ≺_axis a


def separating_axis(a: AxisBox, b: AxisBox) -> Separation | None:
    """Smallest axis on which the boxes are strictly ordered, or None if they meet."""
    _check_dims(a, b)
    for i in range(a.dim):
        if a.hi[i] < b.lo[i]:
            return Separation(i, True)
        if b.hi[i] < a.lo[i]:
            return Separation(i, False)
    return None


def corners(b: AxisBox) -> list:
    return list(itertools.product(*zip(b.lo, b.hi)))


def corners_contained(container: AxisBox, of: AxisBox) -> int:
    """Number of corners of ``of`` lying in the closed box ``container``."""
    _check_dims(container, of)
    count = 1
    for cl, ch, lo, hi in zip(container.lo, container.hi, of.lo, of.hi):
        count *= (cl <= lo <= ch) + (cl <= hi <= ch)
        if not count:
            return 0
    return count


def contains_corner(container: AxisBox, of: AxisBox) -> bool:
    return corners_contained(container, of) > 0


def intersect_at_corner(a: AxisBox, b: AxisBox) -> bool:
    return contains_corner(a, b) or contains_corner(b, a)


class Relation(enum.Enum):
    EQUAL = "equal"
    SUBSET = "subset"          # strict
    SUPERSET = "superset"      # strict
    INCOMPARABLE = "incomparable"


def interval_relation(r: Interval, q: Interval) -> Relation:
    """Relation of ``r`` to ``q``."""
    if r == q:
        return Relation.EQUAL
    if r.issubset(q):
        return Relation.SUBSET
    if q.issubset(r):
        return Relation.SUPERSET
    return Relation.INCOMPARABLE


def containment_profile(q: AxisBox, r: AxisBox) -> tuple:
    """Per axis, how the projection of ``r`` relates to the projection of ``q``."""
    _check_dims(q, r)
    return tuple(interval_relation(r.interval(i), q.interval(i)) for i in range(q.dim))


def common_point(boxes: Iterable[AxisBox]) -> Point:
    """A point in every box of a pairwise-intersecting collection.

    Per axis the coordinate is the largest lower endpoint, which lies below
    every upper endpoint precisely when the boxes pairwise intersect.
    """
    boxes = list(boxes)
    if not boxes:
        raise ValueError("common_point of an empty collection")
    d = boxes[0].dim
    point = []
    for i in range(d):
        top = max(b.lo[i] for b in boxes)
        bottom = min(b.hi[i] for b in boxes)
        if top > bottom:
            raise HypothesisViolation(
                f"boxes are not pairwise intersecting: on axis {i} max lo {top} > min hi {bottom}"
            )
        point.append(top)
    return tuple(point)


@dataclass(frozen=True)
class BoxFamily:
    """An ordered multiset of boxes sharing a dimension."""

    dim: int
    boxes: tuple = ()

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim!r}")
        boxes = tuple(self.boxes)
        for b in boxes:
            if b.dim != self.dim:
                raise DimensionMismatch(f"box of dimension {b.dim} in a family of dimension {self.dim}")
        object.__setattr__(self, "boxes", boxes)

    @classmethod
    def of(cls, boxes: Iterable[AxisBox], dim: int | None = None) -> "BoxFamily":
        boxes = tuple(boxes)
        if dim is None:
            if not boxes:
                raise ValueError("cannot infer the dimension of an empty family")
            dim = boxes[0].dim
        return cls(dim, boxes)

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    def __getitem__(self, i):
        return self.boxes[i]

    def subfamily(self, indices: Iterable[int]) -> "BoxFamily":
        return BoxFamily(self.dim, tuple(self.boxes[i] for i in indices))

    def slice(self, indices: Iterable[int], axis: int, value: Scalar) -> "BoxFamily":
        """Intersect the chosen boxes with the hyperplane ``x_axis = value``.

        The result lives in one dimension fewer.  Every chosen box must meet
        the hyperplane.
        """
        if self.dim < 2:
            raise ValueError("cannot slice a one-dimensional family")
        out = []
        for i in indices:
            b = self.boxes[i]
            if not b.lo[axis] <= value <= b.hi[axis]:
                raise ValueError(f"box {i} does not meet the hyperplane x_{axis} = {value}")
            out.append(b.drop_axis(axis))
        return BoxFamily(self.dim - 1, tuple(out))

    def to_json(self) -> dict:
        return {"dim": self.dim, "boxes": [b.to_json() for b in self.boxes]}

    @classmethod
    def from_json(cls, data: dict) -> "BoxFamily":
        dim = data["dim"]
        boxes = []
        for k, raw in enumerate(data["boxes"]):
            if len(raw) != dim:
                raise DimensionMismatch(f"box {k} has {len(raw)} sides, expected {dim}")
            boxes.append(AxisBox.from_intervals(raw))
        return cls(dim, tuple(boxes))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "BoxFamily":
        return cls.from_json(json.loads(text, parse_float=Fraction))

    def coordinate_matrix(self) -> tuple:
        """Order-preserving integer arrays ``(lo, hi)`` of shape ``(n, d)``."""
        return _integer_coordinates(self)


def _integer_coordinates(f: BoxFamily):
    n, d = len(f), f.dim
    values = [v for b in f.boxes for v in b.lo + b.hi]
    scale = 1
    for v in values:
        if isinstance(v, Fraction):
            scale = scale * v.denominator // np.gcd(scale, v.denominator)
    ints = [int(v * scale) for v in values]
    bound = max((abs(v) for v in ints), default=0)
    dtype = np.int64 if bound < 2**62 else object
    arr = np.array(ints, dtype=dtype).reshape(n, 2, d) if n else np.zeros((0, 2, d), dtype=np.int64)
    return arr[:, 0, :], arr[:, 1, :]


def intersection_matrix(f: BoxFamily) -> np.ndarray:
    """Boolean ``n × n`` matrix of closed-box intersection (diagonal True)."""
    lo, hi = f.coordinate_matrix()
    if not len(f):
        return np.zeros((0, 0), dtype=bool)
    meets = (lo[:, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[:, None, :])
    return np.asarray(meets.all(axis=2), dtype=bool)


def containment_matrix(f: BoxFamily) -> np.ndarray:
    """``C[i, j]`` is True when box j ⊆ box i."""
    lo, hi = f.coordinate_matrix()
    if not len(f):
        return np.zeros((0, 0), dtype=bool)
    inside = (lo[:, None, :] <= lo[None, :, :]) & (hi[None, :, :] <= hi[:, None, :])
    return np.asarray(inside.all(axis=2), dtype=bool)


@dataclass(frozen=True)
class CleanMap:
    """Index bookkeeping for :func:`clean`.

    ``kept[j]`` is the original index of cleaned box ``j``; ``target[i]`` is
    the cleaned index of a retained box contained in original box ``i``
    (its own index when ``i`` was kept).
    """

    kept: tuple
    target: tuple = field(repr=False)

    def removed(self) -> list:
        kept = set(self.kept)
        return [i for i in range(len(self.target)) if i not in kept]


def clean(f: BoxFamily) -> tuple:
    """Drop every box that contains another box of the family.

    Among identical duplicates the first is kept.  Returns ``(family, CleanMap)``.
    """
    n = len(f)
    if n == 0:
        return f, CleanMap((), ())
    inside = containment_matrix(f)
    same = inside & inside.T
    keep = []
    for i in range(n):
        row = inside[i].copy()
        row[i] = False
        # identical later copies do not disqualify i; identical earlier ones do
        dup_later = same[i].copy()
        dup_later[: i + 1] = False
        row &= ~dup_later
        keep.append(not row.any())
    kept = tuple(i for i in range(n) if keep[i])
    position = {orig: j for j, orig in enumerate(kept)}
    target = []
    for i in range(n):
        if keep[i]:
            target.append(position[i])
        else:
            target.append(next(position[j] for j in kept if inside[i, j]))
    return f.subfamily(kept), CleanMap(kept, tuple(target))


def is_clean(f: BoxFamily) -> bool:
    inside = containment_matrix(f)
    np.fill_diagonal(inside, False)
    return not inside.any()


def aspect_ratio(b: AxisBox) -> Scalar:
    """Largest ratio between two side lengths."""
    sides = [b.side(i) for i in range(b.dim)]
    return as_scalar(Fraction(max(sides)) / Fraction(min(sides)))


def coordinate_collisions(f: BoxFamily) -> list:
    """Endpoint values shared by distinct boxes: ``(axis, value, box indices)``.

    An empty result means the family is in general position in the sense the
    counting arguments need; nothing is perturbed.
    """
    out = []
    for axis in range(f.dim):
        seen: dict = {}
        for k, b in enumerate(f.boxes):
            for v in (b.lo[axis], b.hi[axis]):
                seen.setdefault(v, set()).add(k)
        for v in sorted(seen):
            if len(seen[v]) > 1:
                out.append((axis, v, tuple(sorted(seen[v]))))
    return out


def coincident_corners(f: BoxFamily) -> list:
    """Corners shared by two or more distinct boxes: ``(point, box indices)``."""
    owners: dict = {}
    for k, b in enumerate(f.boxes):
        for c in corners(b):
            owners.setdefault(c, set()).add(k)
    return [(c, tuple(sorted(ks))) for c, ks in sorted(owners.items()) if len(ks) > 1]


def lift_point(point: Sequence, axis: int, value: Scalar) -> Point:
    """Insert ``value`` as coordinate ``axis`` of a lower-dimensional point."""
    point = tuple(point)
    return point[:axis] + (value,) + point[axis:]
