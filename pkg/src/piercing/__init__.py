"""Piercing sets (hitting sets) for families of axis-parallel boxes, with
exact rational arithmetic and brute-force certificates."""

from .aspect import AspectInstance, aspect_cover, build_aspect_cover, classify_cases, heavy_rectangles, weak_epsilon_net
from .errors import BudgetExceeded, DimensionMismatch, HypothesisViolation, InvariantViolation, PiercingError
from .exact import Cover, Matching, check_cover, exact_nu, exact_tau, gallai_stab
from .generate import GenSpec, generate
from .geometry import AxisBox, BoxFamily, box, clean, corners, intersect_at_corner, intersects
from .karolyi import karolyi_cover, nu_two_cover, split_threshold
from .lp import fractional_tau, max_corner_piercing, verify_fractional_bound
from .structured import build_witness_graphs, classify, digraph_split, extremal_matching, structured_cover

__all__ = [
    "AspectInstance", "AxisBox", "BoxFamily", "BudgetExceeded", "Cover", "DimensionMismatch", "GenSpec",
    "HypothesisViolation", "InvariantViolation", "Matching", "PiercingError", "aspect_cover", "box",
    "build_aspect_cover", "build_witness_graphs", "check_cover", "classify", "classify_cases", "clean",
    "corners", "digraph_split", "exact_nu", "exact_tau", "extremal_matching", "fractional_tau", "gallai_stab",
    "generate", "heavy_rectangles", "intersect_at_corner", "intersects", "karolyi_cover", "max_corner_piercing",
    "nu_two_cover", "split_threshold", "structured_cover", "verify_fractional_bound", "weak_epsilon_net",
]
