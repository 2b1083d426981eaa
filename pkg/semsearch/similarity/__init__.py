"""Pairwise node similarity: neighbor matching and the fixed-point iteration."""

from .matching import (
    Matching,
    MatchingProblem,
    exact_matching,
    greedy_matching,
    max_matching_value,
)
from .pairsim import (
    PredicateWeights,
    SimilarityCalculator,
    SimilarityConfig,
    SimilarityMatrix,
    candidate_pairs,
    compute_predicate_weights,
    compute_similarity,
    pair_sim_step,
)

__all__ = [
    "Matching",
    "MatchingProblem",
    "exact_matching",
    "greedy_matching",
    "max_matching_value",
    "PredicateWeights",
    "SimilarityCalculator",
    "SimilarityConfig",
    "SimilarityMatrix",
    "candidate_pairs",
    "compute_predicate_weights",
    "compute_similarity",
    "pair_sim_step",
]
