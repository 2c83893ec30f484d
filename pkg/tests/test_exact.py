import itertools

import pytest
from hypothesis import given, settings

from helpers import PENTAGON, boxes, brute_intersects, brute_nu, brute_tau, disjoint_boxes
from piercing.errors import BudgetExceeded, DimensionMismatch, HypothesisViolation
from piercing.exact import (
    Cover,
    Matching,
    NuOracle,
    check_cover,
    exact_nu,
    exact_tau,
    gallai_stab,
    piercing_sets,
    uncovered_boxes,
)
from piercing.geometry import BoxFamily, box


def intervals(*pairs):
    return BoxFamily(1, tuple(box(p) for p in pairs))


class TestGallai:
    def test_example(self):
        f = intervals((1, 3), (2, 5), (4, 7))
        assert gallai_stab(f).points == ((3,), (7,))

    def test_pairwise_intersecting_needs_one_point(self):
        assert len(gallai_stab(intervals((0, 5), (1, 6), (4, 9)))) == 1

    def test_rejects_boxes(self):
        with pytest.raises(DimensionMismatch):
            gallai_stab(PENTAGON)

    @given(boxes(d=1, max_n=9, hi=30))
    def test_size_is_nu_and_tau(self, f):
        c = gallai_stab(f)
        assert check_cover(f, c).ok
        assert len(c) == brute_nu(f) == brute_tau(f)


class TestCoverCheck:
    def test_gallai_cover_passes(self):
        f = intervals((1, 3), (2, 5), (4, 7))
        assert check_cover(f, gallai_stab(f)) == (True, None)

    def test_empty_cover(self):
        f = intervals((1, 3))
        assert check_cover(f, Cover(1)) == (False, 0)
        assert check_cover(BoxFamily(1), Cover(1)).ok

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            check_cover(PENTAGON, Cover(1, ((0,),)))
        with pytest.raises(DimensionMismatch):
            Cover(2, ((0,),))

    @given(boxes(max_n=7, min_n=1))
    @settings(max_examples=60)
    def test_minimum_cover_has_no_redundant_point(self, f):
        tau, c = exact_tau(f)
        for p in c.points:
            smaller = Cover(f.dim, tuple(q for q in c.points if q != p))
            assert not check_cover(f, smaller).ok
            assert uncovered_boxes(f, smaller)

    def test_cover_json(self):
        c = Cover(2, ((1, 2), (0, 5)))
        assert c.points == ((0, 5), (1, 2))
        assert Cover.from_json(c.to_json()) == c
        assert c.to_json() == {"dim": 2, "points": [["0", "5"], ["1", "2"]]}


class TestNu:
    def test_small_cases(self):
        f = BoxFamily(2, (box((0, 3), (0, 3)), box((1, 4), (1, 4)), box((2, 5), (2, 5))))
        assert exact_nu(f)[0] == 1
        assert exact_nu(disjoint_boxes(6, 3))[0] == 6
        assert exact_nu(BoxFamily(2))[0] == 0
        assert exact_nu(PENTAGON)[0] == 2

    @given(boxes(max_n=10))
    def test_matches_subset_enumeration(self, f):
        nu, m = exact_nu(f)
        assert nu == brute_nu(f) == len(m)
        for a, b in itertools.combinations(m.indices, 2):
            assert not brute_intersects(f.boxes[a], f.boxes[b])

    @given(boxes(max_n=8))
    def test_matching_is_lexicographically_first(self, f):
        nu, m = exact_nu(f)
        best = min(
            sub for sub in itertools.combinations(range(len(f)), nu)
            if all(not brute_intersects(f.boxes[a], f.boxes[b]) for a, b in itertools.combinations(sub, 2))
        )
        assert m.indices == best

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_nu(disjoint_boxes(5, 2), budget=4)
        with pytest.raises(BudgetExceeded):
            NuOracle(disjoint_boxes(5, 2), budget=4)

    def test_matching_rejects_intersecting(self):
        with pytest.raises(HypothesisViolation):
            Matching(PENTAGON, (0, 1))

    def test_oracle_subsets(self):
        o = NuOracle(PENTAGON)
        assert o.nu() == 2
        assert o.nu([0, 1]) == 1
        assert o.nu([0, 2]) == 2
        assert o.nu(0) == 0
        assert o.matching([1, 3]).indices == (1, 3)


class TestTau:
    def test_small_cases(self):
        assert exact_tau(BoxFamily(2, (box((0, 1), (0, 1)),)))[0] == 1
        assert exact_tau(disjoint_boxes(5, 2))[0] == 5
        assert exact_tau(PENTAGON)[0] == 3
        assert exact_tau(BoxFamily(3))[0] == 0

    @given(boxes(max_n=7))
    @settings(max_examples=80)
    def test_matches_exhaustive_search(self, f):
        tau, c = exact_tau(f)
        assert check_cover(f, c).ok
        assert tau == len(c) == brute_tau(f)
        assert tau >= brute_nu(f)

    @given(boxes(max_n=7))
    def test_candidate_points_pierce_their_sets(self, f):
        for mask, p in piercing_sets(f).items():
            members = {k for k in range(len(f)) if mask >> k & 1}
            assert members == {k for k, b in enumerate(f.boxes) if b.contains_point(p)}

    @given(boxes(max_n=6))
    def test_maximal_sets_cover_every_grid_point_set(self, f):
        from helpers import coverage_masks

        maximal = set(piercing_sets(f))
        for m in coverage_masks(f):
            assert any(m | big == big for big in maximal)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_tau(disjoint_boxes(5, 2), budget=4)
