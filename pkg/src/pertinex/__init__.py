"""Goal-indexed knowledge extraction with possibilistic scoring and pertinence feedback."""

from pertinex.corpus import (
    Collection,
    CollectionStats,
    ObjectRecord,
    QueryRecord,
    SynthParams,
    ValidationError,
    generate_synthetic,
    load_collection,
    save_collection,
    stats,
)
from pertinex.possibility import (
    Frame,
    MassFunction,
    PossibilityDistribution,
    belief,
    is_nested,
    necessity_of,
    plausibility,
    possibility_of,
    to_possibility_distribution,
    validate_mass,
)
from pertinex.scoring import Index, build_index, pi_gf, pi_iof, score_query
from pertinex.feedback import (
    ExpandedQuery,
    FeedbackCounts,
    WeightedGoal,
    build_expanded_query,
    expand_query,
    ppf_weight,
    prf_weight,
    rank_candidate_goals,
    score_expanded,
)
from pertinex.evaluation import (
    average_precision,
    feedback_experiment,
    overlap_report,
    pr_curve,
    precision,
    recall,
)

__all__ = [
    "Collection", "CollectionStats", "ObjectRecord", "QueryRecord", "SynthParams",
    "ValidationError", "generate_synthetic", "load_collection", "save_collection", "stats",
    "Frame", "MassFunction", "PossibilityDistribution", "belief", "is_nested",
    "necessity_of", "plausibility", "possibility_of", "to_possibility_distribution",
    "validate_mass",
    "Index", "build_index", "pi_gf", "pi_iof", "score_query",
    "ExpandedQuery", "FeedbackCounts", "WeightedGoal", "build_expanded_query",
    "expand_query", "ppf_weight", "prf_weight", "rank_candidate_goals", "score_expanded",
    "average_precision", "feedback_experiment", "overlap_report", "pr_curve",
    "precision", "recall",
]
