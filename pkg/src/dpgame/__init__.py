"""Stable allocations for graphical distance preservation games."""
from importlib import resources

from .dispatch import SOLVERS, dispatch_solve
from .exact import (DEFAULT_BUDGET, SolveOutcome, Status, brute_force_search, pad_with_indifferent,
                    solve_ef_and_jump, solve_ef_fixed_interested)
from .game import (AgentPrefs, Allocation, Game, PreferenceShape, Topology, ValidationError,
                   build_distance_matrix, check_allocation, classify_preferences, cost, diameter,
                   ensure_valid, validate_game)
from .instar import BfsLayers, bfs_layers, solve_ef_in_star
from .kernels import BACKEND
from .parameterized import (TypePartition, compute_vertex_cover, equidistant_set, kernelize_by_vc,
                            neighborhood_partition, solve_ef_diameter, solve_ef_nd, solve_ef_vc)
from .stability import (Notion, StabilityReport, find_envy, find_jump_deviations, find_swap_deviations,
                        is_envy_free, is_jump_stable, is_stable, is_swap_stable, stability_report)
from .structured import (DynamicsTrace, ShapeError, dynamics_symmetric, out_star_dynamics,
                         solve_ef_clique_or_star, solve_ef_out_star, solve_jump_swap_acyclic)


def data_path(name: str):
    """Path of a bundled fixture such as ``example1.json``."""
    return resources.files(__name__) / "data" / name


__all__ = [
    "AgentPrefs", "Allocation", "BACKEND", "BfsLayers", "DEFAULT_BUDGET", "DynamicsTrace", "Game",
    "Notion", "PreferenceShape", "SOLVERS", "ShapeError", "SolveOutcome", "StabilityReport", "Status",
    "Topology", "TypePartition", "ValidationError", "bfs_layers", "brute_force_search",
    "build_distance_matrix", "check_allocation", "classify_preferences", "compute_vertex_cover", "cost",
    "data_path", "diameter", "dispatch_solve", "dynamics_symmetric", "ensure_valid", "equidistant_set",
    "find_envy", "find_jump_deviations", "find_swap_deviations", "is_envy_free", "is_jump_stable",
    "is_stable", "is_swap_stable", "kernelize_by_vc", "neighborhood_partition", "out_star_dynamics",
    "pad_with_indifferent", "solve_ef_and_jump", "solve_ef_clique_or_star", "solve_ef_diameter",
    "solve_ef_fixed_interested", "solve_ef_in_star", "solve_ef_nd", "solve_ef_out_star", "solve_ef_vc",
    "solve_jump_swap_acyclic", "stability_report", "validate_game",
]
