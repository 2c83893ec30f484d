import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_nu, disjoint_boxes
from piercing.errors import HypothesisViolation
from piercing.exact import Matching, check_cover, exact_nu
from piercing.generate import GenSpec, generate
from piercing.geometry import BoxFamily, box, clean
from piercing.structured import (
    Interaction,
    axis_cover_parts,
    build_witness_graphs,
    classify,
    cover_axis_family,
    digraph_split,
    extremal_matching,
    interaction,
    intersecting_witness_violations,
    is_extremal,
    structured_bound,
    structured_core,
    structured_cover,
    swap_is_matching,
)

BRIDGE = BoxFamily(2, (box((0, 4), (0, 10)), box((6, 10), (0, 10)), box((3, 7), (4, 5))))
PENDANT = BoxFamily(2, (box((0, 10), (0, 10)), box((3, 9), (8, 14))))


class TestInteraction:
    def test_tags(self):
        M = box((0, 10), (0, 10))
        assert interaction(box((20, 30), (0, 1)), M) is Interaction.DISJOINT
        assert interaction(box((8, 12), (8, 12)), M) is Interaction.HAS_CORNER
        assert interaction(box((2, 3), (2, 3)), M) is Interaction.HALF_CORNERS
        assert interaction(box((-1, 1), (2, 3)), M) is Interaction.HALF_CORNERS
        assert interaction(box((-1, 11), (2, 3)), M) is Interaction.OTHER

    def test_classify_flags_crossing_strip(self):
        f = BoxFamily(2, (box((0, 10), (0, 10)), box((-1, 11), (2, 3))))
        m = Matching(f, (0,))
        cls = classify(f, m)
        assert cls.violations == ((1, 0),)
        assert not cls.hypothesis_holds
        with pytest.raises(HypothesisViolation):
            structured_cover(f, m)

    def test_classify_requires_maximum(self):
        with pytest.raises(HypothesisViolation):
            classify(BRIDGE, Matching(BRIDGE, (0,)))

    def test_core_and_corner_boxes(self):
        cls = classify(BRIDGE, exact_nu(BRIDGE)[1])
        assert cls.core == (2,)
        assert cls.corner_boxes() == (0, 1)


class TestExtremal:
    def test_disjoint_matching_kept(self):
        f = disjoint_boxes(4, 2)
        assert extremal_matching(f).indices == (0, 1, 2, 3)

    def test_lower_box_replaces_member(self):
        f = BoxFamily(2, (box((0, 10), (0, 10)), box((2, 8), (2, 8)), box((20, 30), (0, 10))))
        assert exact_nu(f)[1].indices == (0, 2)
        m = extremal_matching(f)
        assert m.indices == (1, 2)
        assert swap_is_matching(f, exact_nu(f)[1], 0, 1)

    @given(st.integers(0, 10_000), st.sampled_from([2, 3]))
    def test_output_passes_exhaustive_swap_scan(self, seed, d):
        f = generate(GenSpec("random-boxes", d, 9, seed))
        m = extremal_matching(f)
        assert len(m) == brute_nu(f)
        assert is_extremal(f, m)
        for j, k in itertools.product(m.indices, range(len(f))):
            if k not in m and swap_is_matching(f, m, j, k):
                assert not all(a < b for a, b in zip(f.boxes[k].hi, f.boxes[j].hi))


class TestWitnessGraphs:
    def test_bridge_makes_an_edge(self):
        m = exact_nu(BRIDGE)[1]
        g0, g1 = build_witness_graphs(BRIDGE, m)
        assert g0.edges == {(0, 1): (2,)} and not g1.edges
        assert g0.out_neighbors(0) == [1] and g0.out_degree(1) == 0
        assert g0.witness((0, 1)) == 2

    def test_pendant(self):
        m = exact_nu(PENDANT)[1]
        g0, g1 = build_witness_graphs(PENDANT, m)
        assert g1.pendants == ((1, 0),) and not g0.pendants
        assert g1.pendants_at(0) == [1] and g1.boxes() == {1}

    def test_one_point_per_edge(self):
        m = exact_nu(BRIDGE)[1]
        g0 = build_witness_graphs(BRIDGE, m)[0]
        parts = axis_cover_parts(BRIDGE, m, g0)
        assert [len(p) for p in parts.values()] == [1, 0]
        assert BRIDGE.boxes[2].contains_point(parts[0][0])

    def test_overlapping_pendants_share_a_point(self):
        f = BoxFamily(2, (box((0, 10), (0, 10)), box((3, 9), (8, 14)), box((4, 8), (7, 13)), box((2, 9), (9, 12))))
        m = extremal_matching(f)
        assert m.indices == (0,)
        g1 = build_witness_graphs(f, m)[1]
        assert len(g1.pendants) == 3
        c = cover_axis_family(f, m, g1)
        assert len(c) == 1
        assert all(f.boxes[k].contains_point(c.points[0]) for k in (1, 2, 3))

    @pytest.mark.parametrize("d", [2, 3])
    def test_random_hypothesis_instances(self, d):
        for seed in range(20):
            g, _ = clean(generate(GenSpec("thm18-hypothesis", d, 12, seed)))
            m = extremal_matching(g)
            cls = classify(g, m)
            assert cls.hypothesis_holds
            graphs = build_witness_graphs(g, m, cls)
            for gr in graphs:
                assert len(gr.edges) <= 4 * len(m)
                assert not intersecting_witness_violations(g, gr)
                parts = axis_cover_parts(g, m, gr, extremal=True)
                for v, pts in parts.items():
                    assert len(pts) <= gr.out_degree(v) + d - 1


class TestDigraphSplit:
    def test_single_edge(self):
        assert digraph_split([0, 1], [(0, 1)]).edges == ((0, 1),)

    def test_three_cycle(self):
        sel = digraph_split([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
        assert len(sel.edges) >= 1
        heads = {h for _, h in sel.edges}
        tails = {t for t, _ in sel.edges}
        assert not heads & tails

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            digraph_split([0], [(0, 0)])

    @given(st.integers(1, 12).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
            lambda e: e[0] != e[1])))))
    def test_quarter_of_edges_one_direction(self, g):
        n, edges = g
        sel = digraph_split(range(n), sorted(edges))
        assert 4 * len(sel.edges) >= len(edges)
        heads = {h for _, h in sel.edges}
        tails = {t for t, _ in sel.edges}
        assert not heads & tails
        assert set(sel.edges) <= edges


class TestStructuredCover:
    def test_disjoint(self):
        for d in (1, 2, 3):
            f = disjoint_boxes(5, d)
            c = structured_cover(f)
            assert check_cover(f, c).ok and len(c) <= structured_bound(d, 5)

    def test_bounds(self):
        assert structured_bound(2, 1) == 16
        assert structured_bound(2, 1, extremal=True) == 14
        assert structured_bound(3, 2) == 2 * (8 + 21)

    def test_matching_given_on_unclean_family(self):
        f = BoxFamily(2, (box((0, 10), (0, 10)), box((1, 9), (1, 9)), box((20, 30), (0, 5))))
        c = structured_cover(f, Matching(f, (1, 2)))
        assert check_cover(f, c).ok

    @pytest.mark.parametrize("d", [2, 3])
    def test_random_hypothesis_instances(self, d):
        for seed in range(15):
            f = generate(GenSpec("thm18-hypothesis", d, 12, seed))
            nu = exact_nu(f)[0]
            for ext in (False, True):
                c = structured_cover(f, extremal=ext)
                assert check_cover(f, c).ok
                assert len(c) <= structured_bound(d, nu, ext)

    def test_core_result(self):
        m = exact_nu(BRIDGE)[1]
        res = structured_core(BRIDGE, m, classify(BRIDGE, m))
        assert check_cover(BRIDGE, res.cover).ok
        assert len(res.graphs) == 2
