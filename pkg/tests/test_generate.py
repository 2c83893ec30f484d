import json
import math
from fractions import Fraction

import pytest

from piercing.errors import BudgetExceeded, HypothesisViolation
from piercing.generate import KINDS, GenSpec, generate, generate_with_stats, satisfies_thm18
from piercing.geometry import BoxFamily, aspect_ratio, coordinate_collisions, intersect_at_corner, intersects


def spec_for(kind, seed=0, n=10):
    dim = {"interval-1d": 1, "adversarial-case3": 2}.get(kind, 2)
    r = 2 if kind in ("bounded-aspect", "adversarial-case3") else None
    return GenSpec(kind, dim, n, seed, r=r)


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic(kind):
    assert generate(spec_for(kind, 3)) == generate(spec_for(kind, 3))


@pytest.mark.parametrize("kind", [k for k in KINDS if k != "adversarial-case3"])
def test_size_and_integer_general_position(kind):
    for seed in range(10):
        f = generate(spec_for(kind, seed))
        assert len(f) == 10
        assert coordinate_collisions(f) == []
        assert all(isinstance(v, int) and 0 <= v <= 1000 for b in f.boxes for v in b.lo + b.hi)


def test_seeds_differ():
    assert generate(spec_for("random-boxes", 1)) != generate(spec_for("random-boxes", 2))


def test_cubes():
    for seed in range(20):
        f = generate(GenSpec("cubes", 3, 10, seed))
        for b in f.boxes:
            assert len({b.side(i) for i in range(3)}) == 1
        for a in f.boxes:
            for b in f.boxes:
                if a is not b and intersects(a, b):
                    assert intersect_at_corner(a, b)


def test_interval_family():
    f = generate(GenSpec("interval-1d", 1, 50, 0))
    assert f.dim == 1 and len(f) == 50
    ends = [v for b in f.boxes for v in (b.lo[0], b.hi[0])]
    assert len(set(ends)) == 100


@pytest.mark.parametrize("r", [1, 2, Fraction(5, 2)])
def test_bounded_aspect(r):
    for seed in range(10):
        f = generate(GenSpec("bounded-aspect", 2, 14, seed, r=r))
        assert all(aspect_ratio(b) <= r for b in f.boxes)


@pytest.mark.parametrize("d", [2, 3])
def test_corner_intersecting(d):
    for seed in range(10):
        f = generate(GenSpec("corner-intersecting", d, 10, seed))
        for i, a in enumerate(f.boxes):
            for b in f.boxes[i + 1:]:
                assert not intersects(a, b) or intersect_at_corner(a, b)


@pytest.mark.parametrize("d", [2, 3])
def test_thm18_recheck(d):
    for seed in range(10):
        out = generate_with_stats(GenSpec("thm18-hypothesis", d, 10, seed))
        assert satisfies_thm18(out.family)
        assert 0 < out.acceptance_rate <= 1


def test_adversarial_layout():
    for r in (2, 3, Fraction(3, 2)):
        f = generate(GenSpec("adversarial-case3", 2, 30, 1, r=r))
        k = math.ceil(Fraction(r) ** 2) - 1
        assert len(f) == max(30, 3 * k + 1)
        assert all(aspect_ratio(b) <= r for b in f.boxes)
        assert coordinate_collisions(f) == []
    with pytest.raises(HypothesisViolation):
        generate(GenSpec("adversarial-case3", 2, 5, 0, r=1))


def test_budget_reports_acceptance_rate():
    # this seed needs about twice as many draws as boxes
    spec = GenSpec("corner-intersecting", 2, 40, 0, max_attempts=40)
    with pytest.raises(BudgetExceeded, match="acceptance rate"):
        generate(spec)


def test_invalid_specs():
    with pytest.raises(ValueError):
        GenSpec("nope", 2, 3)
    with pytest.raises(ValueError):
        GenSpec("cubes", 0, 3)
    with pytest.raises(ValueError):
        GenSpec("interval-1d", 2, 3)
    with pytest.raises(ValueError):
        GenSpec("bounded-aspect", 2, 3)
    with pytest.raises(ValueError):
        GenSpec("cubes", 2, 500, coord_range=100)


def test_spec_json_round_trip():
    spec = GenSpec("bounded-aspect", 2, 5, 9, r=Fraction(5, 2))
    data = json.loads(spec.dumps())
    assert data["r"] == "5/2"
    assert GenSpec.from_json(data) == spec


def test_family_json():
    f = generate(spec_for("cubes", 1))
    assert BoxFamily.loads(f.dumps()) == f
