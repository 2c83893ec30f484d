"""Seeded instance generators for every family class the cover bounds talk about.

All coordinates are integers, and no two boxes share an endpoint value on
any axis, so generated families are in general position without any
perturbation.  A :class:`GenSpec` plus its seed determines the output.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import BudgetExceeded, HypothesisViolation
from .geometry import AxisBox, BoxFamily, as_scalar, corners, intersect_at_corner, intersects, separating_axis

KINDS = (
    "random-boxes",
    "cubes",
    "bounded-aspect",
    "corner-intersecting",
    "thm18-hypothesis",
    "interval-1d",
    "adversarial-case3",
)

# share of thm18-hypothesis proposals built off boxes already accepted;
# purely random boxes almost never bridge two members or stick out of one
PLANT_RATE = 0.6


@dataclass(frozen=True)
class GenSpec:
    kind: str
    dim: int
    n: int
    seed: int = 0
    coord_range: int = 1000
    r: object = None
    min_side: int | None = None
    max_side: int | None = None
    max_attempts: int = 10_000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.kind == "interval-1d" and self.dim != 1:
            raise ValueError("interval-1d families have dimension 1")
        if self.kind == "adversarial-case3" and self.dim != 2:
            raise ValueError("adversarial-case3 families are planar")
        if self.kind in ("bounded-aspect", "adversarial-case3"):
            if self.r is None or as_scalar(self.r) < 1:
                raise ValueError(f"{self.kind} needs an aspect bound r ≥ 1")
        if self.r is not None:
            object.__setattr__(self, "r", as_scalar(self.r))
        if self.coord_range < 4 * max(self.n, 1):
            raise ValueError("coordinate range too small for distinct endpoints")

    def to_json(self) -> dict:
        out = asdict(self)
        if self.r is not None:
            out["r"] = str(self.r)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GenSpec":
        return cls(**data)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class _Sampler:
    """Draws boxes with endpoint values unused on every axis."""

    def __init__(self, spec: GenSpec):
        self.spec = spec
        self.rng = random.Random(f"{spec.kind}:{spec.dim}:{spec.n}:{spec.seed}")
        self.used = [set() for _ in range(spec.dim)]
        self.attempts = 0
        self.accepted = 0
        R = spec.coord_range
        self.min_side = spec.min_side if spec.min_side is not None else max(1, R // 10)
        self.max_side = spec.max_side if spec.max_side is not None else max(self.min_side, R // 2)

    def tick(self):
        self.attempts += 1
        if self.attempts > self.spec.max_attempts:
            raise BudgetExceeded(
                f"{self.spec.kind}: rejection budget of {self.spec.max_attempts} draws exhausted "
                f"(acceptance rate {self.accepted}/{self.attempts})"
            )

    def sides(self) -> list:
        rng, d, kind = self.rng, self.spec.dim, self.spec.kind
        if kind == "cubes":
            return [rng.randint(self.min_side, self.max_side)] * d
        if kind in ("bounded-aspect", "corner-intersecting", "thm18-hypothesis"):
            r = self.spec.r if self.spec.r is not None else _default_r(kind)
            base = rng.randint(self.min_side, self.max_side)
            top = math.floor(base * r)
            return [rng.randint(base, top) for _ in range(d)]
        return [rng.randint(self.min_side, self.max_side) for _ in range(d)]

    def draw(self) -> AxisBox:
        R = self.spec.coord_range
        while True:
            self.tick()
            sides = self.sides()
            if any(s >= R for s in sides):
                continue
            lo = [self.rng.randrange(0, R - s) for s in sides]
            hi = [a + s for a, s in zip(lo, sides)]
            if any(a in u or b in u for a, b, u in zip(lo, hi, self.used)):
                continue
            return AxisBox(tuple(lo), tuple(hi))

    def planted(self, boxes: list) -> AxisBox | None:
        """A box built off existing ones: sticking out of one box across a
        facet, bridging two disjoint boxes, or holding a corner of one."""
        rng, d = self.rng, self.spec.dim
        self.tick()
        choice = rng.random()
        lo, hi = [], []
        if choice < 0.4 or len(boxes) < 2:
            b = rng.choice(boxes)
            axis = rng.randrange(d)
            for i in range(d):
                a, z = b.lo[i], b.hi[i]
                if z - a < 3:
                    return None
                if i == axis:
                    inside, reach = rng.randint(a + 1, z - 1), rng.randint(1, z - a)
                    if rng.random() < 0.5:
                        lo_i, hi_i = inside, z + reach
                    else:
                        lo_i, hi_i = a - reach, inside
                else:
                    lo_i, hi_i = sorted(rng.sample(range(a + 1, z), 2))
                lo.append(lo_i)
                hi.append(hi_i)
        elif choice < 0.75:
            b, c = rng.sample(boxes, 2)
            sep = separating_axis(b, c)
            if sep is None:
                return None
            if not sep.a_first:
                b, c = c, b
            for i in range(d):
                if i == sep.axis:
                    if b.hi[i] - b.lo[i] < 2 or c.hi[i] - c.lo[i] < 2:
                        return None
                    lo.append(rng.randint(b.lo[i] + 1, b.hi[i] - 1))
                    hi.append(rng.randint(c.lo[i] + 1, c.hi[i] - 1))
                else:
                    a, z = max(b.lo[i], c.lo[i]), min(b.hi[i], c.hi[i])
                    if z - a < 3:
                        return None
                    lo_i, hi_i = sorted(rng.sample(range(a + 1, z), 2))
                    lo.append(lo_i)
                    hi.append(hi_i)
        else:
            b = rng.choice(boxes)
            corner = rng.choice(corners(b))
            for x in corner:
                s1, s2 = rng.randint(1, self.max_side), rng.randint(1, self.max_side)
                lo.append(x - s1)
                hi.append(x + s2)
        if any(a >= z for a, z in zip(lo, hi)) or min(lo) < 0 or max(hi) > self.spec.coord_range:
            return None
        if any(a in u or z in u for a, z, u in zip(lo, hi, self.used)):
            return None
        return AxisBox(tuple(lo), tuple(hi))

    def accept(self, b: AxisBox):
        for a, h, u in zip(b.lo, b.hi, self.used):
            u.add(a)
            u.add(h)
        self.accepted += 1


def _default_r(kind: str):
    return {"corner-intersecting": 3, "thm18-hypothesis": Fraction(3, 2)}.get(kind, 1)


@dataclass(frozen=True)
class Generated:
    family: BoxFamily
    attempts: int  # candidate boxes drawn, rejected ones included

    @property
    def acceptance_rate(self) -> Fraction:
        return Fraction(len(self.family), self.attempts) if self.attempts else Fraction(1)


def generate(spec: GenSpec) -> BoxFamily:
    return generate_with_stats(spec).family


def generate_with_stats(spec: GenSpec) -> Generated:
    if spec.kind == "adversarial-case3":
        f = _adversarial_case3(spec)
        return Generated(f, len(f))
    sampler = _Sampler(spec)
    boxes: list = []
    while len(boxes) < spec.n:
        if spec.kind == "thm18-hypothesis" and boxes and sampler.rng.random() < PLANT_RATE:
            b = sampler.planted(boxes)
            if b is None:
                continue
        else:
            b = sampler.draw()
        if spec.kind == "corner-intersecting" and not all(
            intersect_at_corner(b, o) for o in boxes if intersects(b, o)
        ):
            continue
        if spec.kind == "thm18-hypothesis" and not _keeps_thm18(boxes, b):
            continue
        sampler.accept(b)
        boxes.append(b)
    return Generated(BoxFamily(spec.dim, tuple(boxes)), sampler.attempts)


def _keeps_thm18(boxes: list, b: AxisBox) -> bool:
    from .structured import classify, extremal_matching

    if any(o.contains_box(b) or b.contains_box(o) for o in boxes):
        return False
    fam = BoxFamily(b.dim, tuple(boxes) + (b,))
    m = extremal_matching(fam, budget=max(40, len(fam)))
    return classify(fam, m, check_maximum=False).hypothesis_holds


def satisfies_thm18(f: BoxFamily, budget: int = 40) -> bool:
    """Whether the cleaned family meets the corner conditions under its extremal matching."""
    from .geometry import clean
    from .structured import classify, extremal_matching

    g, _ = clean(f)
    m = extremal_matching(g, budget)
    return classify(g, m, budget).hypothesis_holds


def _adversarial_case3(spec: GenSpec) -> BoxFamily:
    """A member crossed by as many pairwise disjoint strips as the aspect
    bound allows, each strip held in place by two small blockers.

    With aspect bound ``r`` at most ``⌈r²⌉ - 1`` disjoint strips can cross a
    member without containing one of its corners.  Each strip's ends sit in
    their own blocker boxes, so the member plus all blockers form the unique
    maximum matching and every strip falls to the member's crossing case.
    Remaining boxes (up to ``n``) are random ``r``-bounded boxes placed far
    to the right.
    """
    r = Fraction(spec.r)
    k = math.ceil(r * r) - 1
    if k < 1:
        raise HypothesisViolation("no rectangle can cross a square without containing its corner; need r > 1")
    rng = random.Random(f"{spec.kind}:{spec.n}:{spec.seed}")
    gap, t, u = 12, 4, 3
    width = 40
    while True:
        height = math.floor(r * width)
        strip_h = math.ceil((width + 4 * k) / r)
        if k * strip_h + (k + 1) * gap <= height:
            break
        width *= 2
    shift = rng.randrange(0, 1000)
    member = AxisBox((shift, 0), (shift + width, height))
    strips, blockers = [], []
    y = gap + (height - k * strip_h - (k + 1) * gap) // 2
    for j in range(k):
        y0, y1 = y, y + strip_h
        # strip ends and blocker facets interleave so no endpoint repeats
        strips.append(AxisBox((shift - 2 - 2 * j, y0), (shift + width + 2 + 2 * j, y1)))
        bl, br = strip_h + 2 * t, strip_h + 2 * u
        blockers.append(AxisBox((shift - 1 - 2 * j - bl, y0 - t), (shift - 1 - 2 * j, y1 + t)))
        blockers.append(AxisBox((shift + width + 1 + 2 * j, y0 - u), (shift + width + 1 + 2 * j + br, y1 + u)))
        y = y1 + gap
    # member first, then blockers, then strips: the unique maximum matching
    # is then also the lexicographically first one
    core = [member] + blockers + strips
    if spec.n > len(core):
        far = spec.n - len(core)
        extra = generate(GenSpec("bounded-aspect", 2, far, spec.seed, coord_range=max(1000, 40 * far), r=spec.r))
        offset = shift + 2 * width + 4 * strip_h + height + 100
        core += [AxisBox(tuple(a + offset for a in b.lo), tuple(a + offset for a in b.hi)) for b in extra.boxes]
    return BoxFamily(2, tuple(core))
