"""Maximum-level vertices in arrangements of lines, with exact rational arithmetic."""

from .kernel import Instance, Line, Point, VerticalLine, rational
from .distinct import MaxLevelResult, solve_distinct
from .coincide import solve_coincide
from .testbed import brute_force, gen_lower_bound, gen_random


def solve(instance, mode="auto", search="binary"):
    """Dispatch to the distinct or coincide solver."""
    if mode == "auto":
        mode = "coincide" if instance.has_duplicates() else "distinct"
    if mode == "distinct":
        return solve_distinct(instance)
    return solve_coincide(instance, strategy=search)


__all__ = [
    "Instance", "Line", "Point", "VerticalLine", "rational",
    "MaxLevelResult", "solve", "solve_distinct", "solve_coincide",
    "brute_force", "gen_lower_bound", "gen_random",
]
