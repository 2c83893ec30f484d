import itertools
import math
import random
from fractions import Fraction

import pytest

from helpers import disjoint_boxes
from piercing.aspect import (
    AspectInstance,
    CaseTag,
    aspect_cover,
    build_aspect_cover,
    classify_cases,
    dumps_points,
    heavy_grid,
    heavy_rectangles,
    loads_points,
    minimal_heavy,
    unpierced_heavy,
    weak_epsilon_net,
)
from piercing.errors import BudgetExceeded, HypothesisViolation
from piercing.exact import Cover, Matching, check_cover, exact_nu
from piercing.generate import GenSpec, generate
from piercing.geometry import AxisBox, BoxFamily, box, clean


def brute_heavy(points, eps, r):
    """Every nondegenerate grid rectangle with ≥ ε·n points and aspect ≤ r."""
    xs = sorted({p[0] for p in points})
    ys = sorted({p[1] for p in points})
    need = Fraction(eps) * len(points)
    out = []
    for (x0, x1), (y0, y1) in itertools.product(itertools.combinations(xs, 2), itertools.combinations(ys, 2)):
        w, h = x1 - x0, y1 - y0
        if w > r * h or h > r * w:
            continue
        if sum(x0 <= x <= x1 and y0 <= y <= y1 for x, y in points) >= need:
            out.append(AxisBox((x0, y0), (x1, y1)))
    return out


class TestInstance:
    def test_rejects_wide_rectangles(self):
        with pytest.raises(HypothesisViolation):
            AspectInstance(BoxFamily(2, (box((0, 5), (0, 1)),)), 2)

    def test_rejects_other_dimensions(self):
        with pytest.raises(HypothesisViolation):
            AspectInstance(disjoint_boxes(2, 3), 1)

    def test_rejects_small_r(self):
        with pytest.raises(ValueError):
            AspectInstance(disjoint_boxes(2, 2), Fraction(1, 2))

    def test_bound(self):
        assert AspectInstance(BoxFamily(2), 3).bound(2) == 64


class TestCases:
    def setup_method(self):
        self.f = BoxFamily(2, (
            box((0, 10), (0, 10)),   # member
            box((8, 13), (8, 13)),   # holds the corner (10, 10)
            box((3, 5), (4, 6)),     # strictly inside
            box((-1, 11), (2, 3)),   # crosses along axis 0
        ))
        self.m = Matching(self.f, (0,))

    def test_tags(self):
        inst = AspectInstance(self.f, 12)
        tags = classify_cases(inst, self.m)
        assert tags[1] == CaseTag(1)
        assert tags[2] == CaseTag(2)
        assert tags[3] == CaseTag(3, 0, 0)
        assert str(tags[3]) == "case3(M=0, axis=0)"

    def test_cover_uses_midline(self):
        f = BoxFamily(2, (box((0, 10), (0, 10)), box((-1, 11), (2, 3))))
        res = build_aspect_cover(AspectInstance(f, 12))
        ((j, i), pts), = res.crossing_points.items()
        M = f.boxes[j]
        assert all(p[i] == Fraction(M.lo[i] + M.hi[i], 2) for p in pts)
        assert check_cover(f, res.cover).ok


class TestAspectCover:
    def test_disjoint_squares(self):
        f = disjoint_boxes(6, 2)
        c = aspect_cover(AspectInstance(f, 1))
        assert check_cover(f, c).ok and len(c) <= 16 * 6

    @pytest.mark.parametrize("r", [1, 2, 3, Fraction(3, 2)])
    def test_random_instances(self, r):
        for seed in range(25):
            f = generate(GenSpec("bounded-aspect", 2, 12, seed, r=r))
            inst = AspectInstance(f, r)
            c = aspect_cover(inst)
            nu = exact_nu(f)[0]
            assert check_cover(f, c).ok
            assert len(c) <= inst.bound(nu)

    def test_tags_exhaustive_and_stabs_inside(self):
        for seed in range(25):
            g, _ = clean(generate(GenSpec("bounded-aspect", 2, 12, seed, r=3)))
            res = build_aspect_cover(AspectInstance(g, 3))
            assert len(res.tags) == len(g)
            for (j, i), pts in res.crossing_points.items():
                assert len(pts) <= 9
                mine = [k for k, t in enumerate(res.tags) if t.case == 3 and (t.member, t.axis) == (j, i)]
                for k in mine:
                    assert any(g.boxes[k].contains_point(p) for p in pts)

    @pytest.mark.parametrize("r", [2, 3, Fraction(5, 2)])
    def test_crossing_strips(self, r):
        f = generate(GenSpec("adversarial-case3", 2, 0, 4, r=r))
        g, _ = clean(f)
        res = build_aspect_cover(AspectInstance(g, r))
        k = math.ceil(Fraction(r) ** 2) - 1
        assert len(res.matching) == 2 * k + 1
        assert {key: len(p) for key, p in res.crossing_points.items()} == {(0, 0): k}
        assert check_cover(f, res.cover).ok


class TestWeakNet:
    def test_eps_one(self):
        rng = random.Random(2)
        pts = [(rng.randrange(50), rng.randrange(50)) for _ in range(15)]
        net = weak_epsilon_net(pts, 1, 1)
        assert net.nu <= 1 and len(net.cover) <= 16

    def test_grid_5x5(self):
        pts = [(x, y) for x in range(5) for y in range(5)]
        eps, r = Fraction(1, 5), 2
        net = weak_epsilon_net(pts, eps, r)
        assert len(net.cover) <= 22 * 5
        for R in brute_heavy(pts, eps, r):
            assert any(R.contains_point(p) for p in net.cover.points)
        assert not unpierced_heavy(pts, eps, r, net.cover)

    def test_far_clusters(self):
        rng = random.Random(9)
        k, per = 4, 5
        pts = [(1000 * c + rng.randrange(20), 1000 * c + rng.randrange(20)) for c in range(k) for _ in range(per)]
        eps = Fraction(per, k * per)
        net = weak_epsilon_net(pts, eps, 2)
        assert k <= len(net.cover) <= 22 * k

    def test_minimal_family_matches_brute_force(self):
        rng = random.Random(4)
        for _ in range(10):
            pts = [(rng.randrange(30), rng.randrange(30)) for _ in range(12)]
            heavy = brute_heavy(pts, Fraction(1, 3), 2)
            mins = {R for R in heavy if not any(S != R and R.contains_box(S) for S in heavy)}
            assert set(heavy_rectangles(pts, Fraction(1, 3), 2).boxes) == mins
            grid = heavy_grid(pts, Fraction(1, 3), 2)
            assert int(grid.heavy.sum()) == len(heavy)
            assert int(minimal_heavy(grid).sum()) == len(mins)

    def test_uncovered_reported(self):
        pts = [(0, 0), (1, 1), (2, 2), (3, 3)]
        assert unpierced_heavy(pts, Fraction(1, 2), 1, Cover(2))

    def test_fractional_points(self):
        pts = [(Fraction(1, 3), 0), (1, Fraction(1, 2)), (Fraction(2, 3), 1), (0, Fraction(1, 4))]
        net = weak_epsilon_net(pts, Fraction(1, 2), 3)
        assert not unpierced_heavy(pts, Fraction(1, 2), 3, net.cover)

    def test_bad_input(self):
        with pytest.raises(ValueError):
            weak_epsilon_net([(0, 0)], 0, 1)
        with pytest.raises(ValueError):
            weak_epsilon_net([(0, 0, 0)], 1, 1)
        with pytest.raises(BudgetExceeded):
            heavy_grid([(i, i) for i in range(60)], Fraction(1, 2), 1)

    def test_point_json(self):
        pts = [(Fraction(1, 3), 2), (0, -1)]
        text = dumps_points(pts)
        assert '"1/3"' in text
        assert loads_points(text) == pts
