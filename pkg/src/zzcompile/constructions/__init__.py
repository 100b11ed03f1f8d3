"""Upper-bound constructions."""

from .auto import METHODS, CompileResult, compile_auto, family_candidates
from .families import (
    clique_decomposition,
    cycle_decomposition,
    disjoint_cliques_decomposition,
    path_decomposition,
    perfect_matching_decomposition,
)
from .hadamard import HadamardMatrix, hadamard, is_hadamard
from .small import detect_small_gc, is_clique_union, is_complete_bipartite
from .stars import (
    PROTOTYPE_SIGNS,
    PROTOTYPE_WEIGHTS,
    DoubleStarClasses,
    double_star_classes,
    double_star_decomposition,
    star_decomposition,
    union_of_double_stars,
    union_of_stars,
)

__all__ = [
    "METHODS", "CompileResult", "compile_auto", "family_candidates",
    "clique_decomposition", "cycle_decomposition", "disjoint_cliques_decomposition",
    "path_decomposition", "perfect_matching_decomposition",
    "HadamardMatrix", "hadamard", "is_hadamard",
    "detect_small_gc", "is_clique_union", "is_complete_bipartite",
    "PROTOTYPE_SIGNS", "PROTOTYPE_WEIGHTS", "DoubleStarClasses", "double_star_classes",
    "double_star_decomposition", "star_decomposition", "union_of_double_stars", "union_of_stars",
]
