"""Inverted index and the baseline possibilistic ranking.

The object score is the sum, over query goals, of the possibilistic inverse
object frequency log(N/n_i) times the possibilistic goal frequency
log(f+1)/log(L).  Natural logs throughout; the ranking is invariant to the
base (the `base` keyword exists for verifying exactly that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pertinex.corpus import Collection, QueryRecord


@dataclass(frozen=True)
class Posting:
    n_i: int                       # objects containing the goal
    occurrences: dict[str, int]    # object-id -> frequency


@dataclass(frozen=True)
class Index:
    n_objects: int
    postings: dict[str, Posting]
    object_goal_counts: dict[str, int]  # object-id -> unique goal count L_j


@dataclass(frozen=True)
class ScoredObject:
    object_id: str
    score: float


ScoredList = list[ScoredObject]


def build_index(collection: Collection) -> Index:
    occurrences: dict[str, dict[str, int]] = {}
    object_goal_counts: dict[str, int] = {}
    for obj in collection.objects:
        object_goal_counts[obj.id] = obj.unique_goal_count
        for goal, freq in obj.occurrences.items():
            occurrences.setdefault(goal, {})[obj.id] = freq
    postings = {
        goal: Posting(n_i=len(occ), occurrences=occ) for goal, occ in occurrences.items()
    }
    return Index(
        n_objects=len(collection.objects),
        postings=postings,
        object_goal_counts=object_goal_counts,
    )


def pi_iof(index: Index, goal: str, base: float = math.e) -> float:
    """Inverse object frequency log(N/n_i); 0 when the goal occurs everywhere."""
    posting = index.postings.get(goal)
    if posting is None:
        raise KeyError(f"goal {goal!r} not in index")
    return math.log(index.n_objects / posting.n_i, base)


def pi_gf(index: Index, goal: str, object_id: str) -> float:
    """Goal frequency log(f+1)/log(max(L, 2)); 0 when the goal is absent.

    The max(L, 2) floor keeps the denominator defined for single-goal objects
    and coincides with log(L) for L >= 2.  Base-invariant (ratio of logs).
    """
    if object_id not in index.object_goal_counts:
        raise KeyError(f"object {object_id!r} not in index")
    posting = index.postings.get(goal)
    f = posting.occurrences.get(object_id, 0) if posting else 0
    if f == 0:
        return 0.0
    l_j = max(index.object_goal_counts[object_id], 2)
    return math.log(f + 1) / math.log(l_j)


def rank(scores: dict[str, float]) -> ScoredList:
    """Descending score, ties broken by ascending object id."""
    return [
        ScoredObject(object_id=oid, score=s)
        for oid, s in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    ]


def score_query(index: Index, query: QueryRecord, base: float = math.e) -> ScoredList:
    """Baseline ranking: sum of pi_iof * pi_gf over query goals per object.

    Only objects sharing at least one query goal appear.  Goals absent from
    the index contribute nothing.
    """
    scores: dict[str, float] = {}
    for goal in query.goals:
        posting = index.postings.get(goal)
        if posting is None:
            continue
        iof = pi_iof(index, goal, base=base)
        for object_id in posting.occurrences:
            scores[object_id] = scores.get(object_id, 0.0) + iof * pi_gf(index, goal, object_id)
    return rank(scores)
