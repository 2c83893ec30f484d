"""Fractional piercing: an exact simplex for τ* = ν* and the corner-counting check.

The packing LP ``max Σ y_B  s.t.  Σ_{B ∋ p} y_B ≤ 1 for every candidate point p``
has the origin as a feasible basis, so a single phase suffices.  The
covering weights on points are the simplex multipliers of the final basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, HypothesisViolation, InvariantViolation
from .exact import DEFAULT_BUDGET, _bits, exact_nu, piercing_sets
from .geometry import BoxFamily, corners, intersect_at_corner, intersects


def simplex_max(A, b, c):
    """Maximise ``c·y`` subject to ``A y ≤ b``, ``y ≥ 0``, for ``b ≥ 0``.

    Exact arithmetic with Bland's rule.  Returns ``(value, y, x)`` where ``x``
    is an optimal solution of the dual ``min b·x, Aᵀx ≥ c, x ≥ 0``.
    Raises ValueError when the LP is unbounded.
    """
    m = len(A)
    n = len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("simplex_max needs a nonnegative right-hand side")
    width = n + m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [Fraction(0)] * m
        row[n + i] = Fraction(1)
        rows.append(row)
    rhs = [Fraction(v) for v in b]
    basis = [n + i for i in range(m)]
    # reduced costs r_j = c_j - c_B B^-1 A_j, objective = c_B B^-1 b
    red = [Fraction(v) for v in c] + [Fraction(0)] * m
    obj = Fraction(0)

    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best_ratio = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[leave]):
                    best_ratio, leave = ratio, i
        if leave is None:
            raise ValueError("LP is unbounded")
        piv_row = rows[leave]
        piv = piv_row[enter]
        if piv != 1:
            piv_row[:] = [v / piv for v in piv_row]
            rhs[leave] /= piv
        for i in range(m):
            if i != leave:
                factor = rows[i][enter]
                if factor:
                    ri = rows[i]
                    for j in range(width):
                        if piv_row[j]:
                            ri[j] -= factor * piv_row[j]
                    rhs[i] -= factor * rhs[leave]
        factor = red[enter]
        for j in range(width):
            if piv_row[j]:
                red[j] -= factor * piv_row[j]
        obj += factor * rhs[leave]
        basis[leave] = enter

    y = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            y[var] = rhs[i]
    x = [-red[n + i] for i in range(m)]
    return obj, y, x


@dataclass(frozen=True)
class FractionalSolution:
    """An optimal pair: point weights (fractional cover) and box weights
    (fractional matching) with equal total."""

    value: Fraction
    point_weights: dict
    box_weights: dict


def fractional_tau(f: BoxFamily, budget: int = DEFAULT_BUDGET, max_points: int = 5000) -> FractionalSolution:
    n = len(f)
    if n > budget:
        raise BudgetExceeded(f"LP over {n} boxes exceeds budget {budget}")
    if n == 0:
        return FractionalSolution(Fraction(0), {}, {})
    sets = piercing_sets(f)
    if len(sets) > max_points:
        raise BudgetExceeded(f"{len(sets)} candidate points exceed the LP budget {max_points}")
    masks = list(sets)
    A = [[1 if m >> k & 1 else 0 for k in range(n)] for m in masks]
    value, y, x = simplex_max(A, [1] * len(masks), [1] * n)

    point_weights = {sets[m]: x[r] for r, m in enumerate(masks)}
    box_weights = dict(enumerate(y))
    primal = sum(point_weights.values(), Fraction(0))
    dual = sum(box_weights.values(), Fraction(0))
    if not primal == dual == value:
        raise InvariantViolation(f"primal {primal} and dual {dual} optima differ")
    for k in range(n):
        load = sum((x[r] for r, m in enumerate(masks) if m >> k & 1), Fraction(0))
        if load < 1 or y[k] < 0:
            raise InvariantViolation(f"box {k} is under-covered ({load}) by the fractional cover")
    for r, m in enumerate(masks):
        if x[r] < 0 or sum((y[k] for k in _bits(m)), Fraction(0)) > 1:
            raise InvariantViolation(f"fractional matching overloads point {sets[m]}")
    return FractionalSolution(value, point_weights, box_weights)


def first_non_corner_pair(f: BoxFamily):
    """An intersecting pair where neither box contains a corner of the other, or None."""
    boxes = f.boxes
    for a in range(len(boxes)):
        for b in range(a + 1, len(boxes)):
            if intersects(boxes[a], boxes[b]) and not intersect_at_corner(boxes[a], boxes[b]):
                return a, b
    return None


def is_corner_intersecting(f: BoxFamily) -> bool:
    return first_non_corner_pair(f) is None


def max_corner_piercing(f: BoxFamily) -> tuple:
    """The box corner lying in the most boxes (its own box included).

    Returns ``(corner, count)``; ties go to the lexicographically smallest corner.
    """
    bad = first_non_corner_pair(f)
    if bad is not None:
        raise HypothesisViolation(f"boxes {bad[0]} and {bad[1]} intersect but not at a corner", bad)
    best = None
    for b in f.boxes:
        for c in corners(b):
            count = sum(1 for other in f.boxes if other.contains_point(c))
            if best is None or count > best[1] or (count == best[1] and c < best[0]):
                best = (c, count)
    if best is None:
        raise ValueError("empty family has no corners")
    return best


@dataclass(frozen=True)
class FractionalBoundReport:
    tau_star: Fraction
    nu: int
    bound: int
    holds: bool

    @property
    def margin(self) -> Fraction:
        return self.bound - self.tau_star


def verify_fractional_bound(f: BoxFamily, budget: int = DEFAULT_BUDGET) -> FractionalBoundReport:
    """Check ``τ* ≤ 2^d ν`` on a family whose intersections all occur at corners."""
    bad = first_non_corner_pair(f)
    if bad is not None:
        raise HypothesisViolation(f"boxes {bad[0]} and {bad[1]} intersect but not at a corner", bad)
    sol = fractional_tau(f, budget)
    nu, _ = exact_nu(f, budget)
    bound = 2 ** f.dim * nu
    report = FractionalBoundReport(sol.value, nu, bound, sol.value <= bound)
    if not report.holds:
        raise InvariantViolation(f"τ* = {sol.value} exceeds 2^d ν = {bound}")
    return report
