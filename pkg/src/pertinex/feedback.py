"""Feedback weighting, query expansion, and re-scoring.

Two weighting functions over the same counts: the probabilistic relevance
weight (raw log-odds ratio, half-smoothed only when a factor degenerates) and
the possibilistic pertinence weight (always half-smoothed, scaled by r_i).
Expansion takes the top-k candidate goals from pertinent objects; re-scoring
substitutes the pertinence weight for the inverse object frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from pertinex.corpus import QueryRecord
from pertinex.scoring import Index, ScoredList, pi_gf, rank

DEFAULT_EXPANSION_K = 10


class Method(str, Enum):
    PRF = "prf"
    PPF = "ppf"


@dataclass(frozen=True)
class FeedbackCounts:
    n_objects: int   # N
    n_with_goal: int  # n_i
    n_pertinent: int  # R
    n_pertinent_with_goal: int  # r_i

    def __post_init__(self):
        n, ni, r, ri = self.n_objects, self.n_with_goal, self.n_pertinent, self.n_pertinent_with_goal
        if not (1 <= ni <= n):
            raise ValueError(f"need 1 <= n_i <= N, got n_i={ni}, N={n}")
        if not (0 <= r <= n):
            raise ValueError(f"need 0 <= R <= N, got R={r}, N={n}")
        if not (0 <= ri <= min(r, ni)):
            raise ValueError(f"need 0 <= r_i <= min(R, n_i), got r_i={ri}")
        if r - ri > n - ni:
            raise ValueError(
                f"pertinent objects without the goal (R - r_i = {r - ri}) cannot "
                f"exceed objects without it (N - n_i = {n - ni})"
            )


@dataclass(frozen=True)
class WeightedGoal:
    goal: str
    weight: float
    method: Method


@dataclass(frozen=True)
class ExpandedQuery:
    original: tuple[str, ...]
    added: tuple[str, ...]
    weights: dict[str, float]
    method: Method


def _smoothed_log_odds(c: FeedbackCounts, base: float) -> float:
    n, ni, r, ri = c.n_objects, c.n_with_goal, c.n_pertinent, c.n_pertinent_with_goal
    num = (ri + 0.5) * (n - ni - r + ri + 0.5)
    den = (r - ri + 0.5) * (ni - ri + 0.5)
    return math.log(num / den, base)


def prf_weight(c: FeedbackCounts, base: float = math.e) -> float:
    """Probabilistic relevance weight.

    Uses the raw log-odds ratio when all four factors are positive; otherwise
    falls back to the half-smoothed form so the weight is always finite.
    """
    n, ni, r, ri = c.n_objects, c.n_with_goal, c.n_pertinent, c.n_pertinent_with_goal
    factors = (ri, n - ni - r + ri, r - ri, ni - ri)
    if all(f > 0 for f in factors):
        return math.log((ri * (n - ni - r + ri)) / ((r - ri) * (ni - ri)), base)
    return _smoothed_log_odds(c, base)


def ppf_weight(c: FeedbackCounts, base: float = math.e) -> float:
    """Pertinence weight: r_i times the half-smoothed log-odds ratio; 0 when r_i = 0."""
    return c.n_pertinent_with_goal * _smoothed_log_odds(c, base)


def _weight(method: Method, c: FeedbackCounts, base: float) -> float:
    return prf_weight(c, base) if method is Method.PRF else ppf_weight(c, base)


def counts_for_goal(index: Index, goal: str, pertinent: set[str]) -> FeedbackCounts:
    posting = index.postings.get(goal)
    if posting is None:
        raise KeyError(f"goal {goal!r} not in index")
    return FeedbackCounts(
        n_objects=index.n_objects,
        n_with_goal=posting.n_i,
        n_pertinent=len(pertinent),
        n_pertinent_with_goal=sum(1 for oid in pertinent if oid in posting.occurrences),
    )


def rank_candidate_goals(
    index: Index,
    pertinent: set[str],
    original: QueryRecord,
    method: Method,
    base: float = math.e,
) -> list[WeightedGoal]:
    """Score every goal occurring in a pertinent object, minus the original
    query goals, by the chosen method; weight descending, then goal id."""
    if not pertinent:
        raise ValueError("pertinent set is empty")
    for oid in pertinent:
        if oid not in index.object_goal_counts:
            raise KeyError(f"object {oid!r} not in index")
    pool = {
        goal
        for goal, posting in index.postings.items()
        if any(oid in posting.occurrences for oid in pertinent)
    } - set(original.goals)
    weighted = [
        WeightedGoal(goal=g, weight=_weight(method, counts_for_goal(index, g, pertinent), base), method=method)
        for g in pool
    ]
    weighted.sort(key=lambda wg: (-wg.weight, wg.goal))
    return weighted


def expand_query(
    original: QueryRecord,
    candidates: list[WeightedGoal],
    k: int = DEFAULT_EXPANSION_K,
    threshold: float | None = None,
    original_weights: dict[str, float] | None = None,
) -> ExpandedQuery:
    """Add the top-k candidates (or, in threshold mode, all with weight > threshold).

    The weight map covers the original goals too, via `original_weights`
    (weights computed from the same judgments under the same method).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if threshold is not None:
        selected = [wg for wg in candidates if wg.weight > threshold]
    else:
        selected = candidates[:k]
    method = candidates[0].method if candidates else Method.PPF
    weights = dict(original_weights or {})
    for wg in selected:
        weights[wg.goal] = wg.weight
    return ExpandedQuery(
        original=tuple(original.goals),
        added=tuple(wg.goal for wg in selected),
        weights=weights,
        method=method,
    )


def build_expanded_query(
    index: Index,
    pertinent: set[str],
    original: QueryRecord,
    method: Method,
    k: int = DEFAULT_EXPANSION_K,
    threshold: float | None = None,
    base: float = math.e,
) -> ExpandedQuery:
    """Full expansion pipeline: candidate ranking plus original-goal weighting."""
    candidates = rank_candidate_goals(index, pertinent, original, method, base=base)
    original_weights = {
        g: _weight(method, counts_for_goal(index, g, pertinent), base)
        for g in original.goals
        if g in index.postings
    }
    eq = expand_query(original, candidates, k=k, threshold=threshold,
                      original_weights=original_weights)
    return ExpandedQuery(original=eq.original, added=eq.added, weights=eq.weights, method=method)


def score_expanded(index: Index, eq: ExpandedQuery) -> ScoredList:
    """Re-score with pertinence weights in place of the inverse object frequency.

    Negative weights are kept and may pull an object's score down; objects
    matching no expanded-query goal are omitted.
    """
    scores: dict[str, float] = {}
    for goal in (*eq.original, *eq.added):
        posting = index.postings.get(goal)
        if posting is None or goal not in eq.weights:
            continue
        pw = eq.weights[goal]
        for object_id in posting.occurrences:
            scores[object_id] = scores.get(object_id, 0.0) + pw * pi_gf(index, goal, object_id)
    return rank({oid: s for oid, s in scores.items() if s != 0.0})
