"""Deterministic (1 + 9/n)-approximation schedules for TTP-2, n = 2 (mod 4)."""

from .analysis import TravelReport, analytic_upper_bound, lower_bounds, travel_totals
from .construction import (
    ConstructionResult,
    Game,
    Schedule,
    construct_schedule,
    read_timetable,
    write_timetable,
)
from .exact import ExactResult, solve_exact
from .graph import Matching, SpanningTree, Tour, christofides_tour, min_weight_perfect_matching, minimum_spanning_tree
from .instances import DistanceMatrix, generate_instance, load_instance, serialize_instance, validate_metric
from .numbering import TeamNumbering, assign_numbering, degree_sums, numbering_diagnostics
from .validation import Violation, validate_schedule

__all__ = [
    "ConstructionResult",
    "DistanceMatrix",
    "ExactResult",
    "Game",
    "Matching",
    "Schedule",
    "SpanningTree",
    "TeamNumbering",
    "Tour",
    "TravelReport",
    "Violation",
    "analytic_upper_bound",
    "assign_numbering",
    "christofides_tour",
    "construct_schedule",
    "degree_sums",
    "generate_instance",
    "load_instance",
    "lower_bounds",
    "min_weight_perfect_matching",
    "minimum_spanning_tree",
    "numbering_diagnostics",
    "read_timetable",
    "serialize_instance",
    "solve_exact",
    "travel_totals",
    "validate_metric",
    "validate_schedule",
    "write_timetable",
]
