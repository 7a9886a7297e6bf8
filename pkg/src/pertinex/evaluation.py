"""Retrieval metrics, interpolated PR curves, and the feedback experiments.

Feedback runs are evaluated on the residual collection: objects the simulated
user already fed back are removed from both the ranking and the relevant set,
uniformly for the baseline, PRF, and PPF arms at the same feedback size R.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from pertinex.corpus import Collection, QueryRecord
from pertinex.feedback import (
    DEFAULT_EXPANSION_K,
    Method,
    build_expanded_query,
    counts_for_goal,
    ppf_weight,
    prf_weight,
    score_expanded,
)
from pertinex.scoring import Index, ScoredList, build_index, score_query

RECALL_LEVELS = [i / 10 for i in range(11)]

# Reference statistics reported for the original word-processor collection,
# shown alongside synthetic results for qualitative comparison only.
REPORTED_SET_DIFFERENCE_PCT = 28.0
REPORTED_WEIGHT_DIFFERENCE_PCT = 87.0


@dataclass(frozen=True)
class PRPoint:
    recall_level: float
    precision: float


@dataclass(frozen=True)
class FeedbackCurvePoint:
    r_fed: int
    mean_avg_precision: float
    queries_evaluated: int
    queries_skipped: int


@dataclass(frozen=True)
class FeedbackCurve:
    method: str  # baseline | prf | ppf
    points: list[FeedbackCurvePoint]


@dataclass(frozen=True)
class QueryOverlap:
    query_id: str
    set_difference_pct: float
    weight_difference_pct: float
    shared_goals: int


@dataclass(frozen=True)
class OverlapReport:
    mean_set_difference_pct: float
    mean_weight_difference_pct: float
    per_query: list[QueryOverlap]
    reported_set_difference_pct: float = REPORTED_SET_DIFFERENCE_PCT
    reported_weight_difference_pct: float = REPORTED_WEIGHT_DIFFERENCE_PCT


def recall(extracted: list[str], relevant: set[str]) -> float:
    """Fraction of the relevant set that was extracted."""
    if not relevant:
        raise ValueError("relevant set is empty; caller should skip this query")
    return len(relevant.intersection(extracted)) / len(relevant)


def precision(extracted: list[str], relevant: set[str]) -> float:
    """Fraction of extracted objects that are relevant; 0 for an empty extraction."""
    if not extracted:
        return 0.0
    return len(relevant.intersection(extracted)) / len(extracted)


def pr_curve(ranked: ScoredList, relevant: set[str]) -> list[PRPoint]:
    """Interpolated 11-point precision/recall curve.

    Precision at level l is the max precision over all cutoffs whose recall
    reaches l; 0 where no cutoff does.  Non-increasing by construction.
    """
    if not relevant:
        raise ValueError("relevant set is empty")
    hits = 0
    points: list[tuple[float, float]] = []  # (recall, precision) at each cutoff
    for i, scored in enumerate(ranked, 1):
        if scored.object_id in relevant:
            hits += 1
            points.append((hits / len(relevant), hits / i))
    curve = []
    for level in RECALL_LEVELS:
        achievable = [p for r, p in points if r >= level - 1e-12]
        curve.append(PRPoint(recall_level=level, precision=max(achievable, default=0.0)))
    return curve


def mean_pr_curve(curves: list[list[PRPoint]]) -> list[PRPoint]:
    """Arithmetic mean of per-query curves at each standard level."""
    if not curves:
        return [PRPoint(level, 0.0) for level in RECALL_LEVELS]
    return [
        PRPoint(level, sum(c[i].precision for c in curves) / len(curves))
        for i, level in enumerate(RECALL_LEVELS)
    ]


def average_precision(ranked: list[str], relevant: set[str]) -> float:
    """Mean over the relevant set of precision at each relevant rank (0 if unretrieved)."""
    if not relevant:
        raise ValueError("relevant set is empty")
    hits = 0
    total = 0.0
    for i, oid in enumerate(ranked, 1):
        if oid in relevant:
            hits += 1
            total += hits / i
    return total / len(relevant)


def _fed_back(baseline: ScoredList, relevant: set[str], r: int) -> list[str]:
    """The first min(r, available) relevant objects the user meets in the ranking."""
    fed = []
    for scored in baseline:
        if scored.object_id in relevant:
            fed.append(scored.object_id)
            if len(fed) == r:
                break
    return fed


def evaluate_query_at_r(
    index: Index,
    query: QueryRecord,
    relevant: set[str],
    method: str,
    r: int,
    k: int = DEFAULT_EXPANSION_K,
) -> float | None:
    """Residual average precision for one query at feedback size r.

    Returns None when the query is not evaluable: no relevant object shows up
    in the baseline ranking, or feeding back exhausts the relevant set.
    """
    baseline = score_query(index, query)
    fed = _fed_back(baseline, relevant, r)
    if not fed:
        return None
    residual_relevant = relevant - set(fed)
    if not residual_relevant:
        return None
    if method == "baseline":
        ranked = [s.object_id for s in baseline if s.object_id not in fed]
    else:
        eq = build_expanded_query(index, set(fed), query, Method(method), k=k)
        reranked = score_expanded(index, eq)
        ranked = [s.object_id for s in reranked if s.object_id not in fed]
    return average_precision(ranked, residual_relevant)


def feedback_experiment(
    collection: Collection,
    judgments: dict[str, set[str]],
    method: str,
    r_values: list[int],
    k: int = DEFAULT_EXPANSION_K,
) -> FeedbackCurve:
    """Mean residual average precision per feedback size, over all judged queries."""
    if not r_values:
        raise ValueError("r_values is empty")
    if any(r < 1 for r in r_values):
        raise ValueError("every R must be >= 1")
    index = build_index(collection)
    points = []
    for r in r_values:
        aps = []
        skipped = 0
        for query in collection.queries:
            relevant = judgments.get(query.id)
            if not relevant:
                skipped += 1
                continue
            ap = evaluate_query_at_r(index, query, relevant, method, r, k=k)
            if ap is None:
                skipped += 1
            else:
                aps.append(ap)
        points.append(FeedbackCurvePoint(
            r_fed=r,
            mean_avg_precision=sum(aps) / len(aps) if aps else 0.0,
            queries_evaluated=len(aps),
            queries_skipped=skipped,
        ))
    return FeedbackCurve(method=method, points=points)


def overlap_report(
    collection: Collection,
    judgments: dict[str, set[str]],
    r: int,
    k: int = DEFAULT_EXPANSION_K,
    methods: tuple[str, str] = ("prf", "ppf"),
) -> OverlapReport:
    """Compare the two methods' top-k expansion sets from identical judgments.

    Set difference is measured against the larger of the two selected sets
    (= k whenever enough candidates exist), so identical selections score 0
    even when the candidate pool is smaller than k.  Weight difference is the
    normalized absolute difference over shared goals, skipping goals where
    both weights are 0.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    index = build_index(collection)
    weight_fn = {"prf": prf_weight, "ppf": ppf_weight}
    per_query = []
    for query in collection.queries:
        relevant = judgments.get(query.id)
        if not relevant:
            continue
        baseline = score_query(index, query)
        fed = _fed_back(baseline, relevant, r)
        if not fed:
            continue
        sets = []
        for method in methods:
            eq = build_expanded_query(index, set(fed), query, Method(method), k=k)
            sets.append(set(eq.added))
        shared = sets[0] & sets[1]
        denom = max(len(sets[0]), len(sets[1]))
        set_diff = 100.0 * (1.0 - len(shared) / denom) if denom else 0.0
        diffs = []
        for goal in shared:
            counts = counts_for_goal(index, goal, set(fed))
            w_a = weight_fn[methods[0]](counts)
            w_b = weight_fn[methods[1]](counts)
            denom = max(abs(w_a), abs(w_b))
            if denom > 0:
                diffs.append(100.0 * abs(w_a - w_b) / denom)
        per_query.append(QueryOverlap(
            query_id=query.id,
            set_difference_pct=set_diff,
            weight_difference_pct=sum(diffs) / len(diffs) if diffs else 0.0,
            shared_goals=len(shared),
        ))
    n = len(per_query)
    return OverlapReport(
        mean_set_difference_pct=sum(q.set_difference_pct for q in per_query) / n if n else 0.0,
        mean_weight_difference_pct=sum(q.weight_difference_pct for q in per_query) / n if n else 0.0,
        per_query=per_query,
    )


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def write_pr_curve_csv(
    path: str | Path, per_query: dict[str, list[PRPoint]], mean_curve: list[PRPoint]
) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["query_id", "recall_level", "precision"])
        for qid in sorted(per_query):
            for pt in per_query[qid]:
                w.writerow([qid, _fmt(pt.recall_level), _fmt(pt.precision)])
        for pt in mean_curve:
            w.writerow(["__mean__", _fmt(pt.recall_level), _fmt(pt.precision)])


def write_feedback_curve_csv(path: str | Path, curves: list[FeedbackCurve]) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "R", "mean_avg_precision", "queries_evaluated", "queries_skipped"])
        for curve in curves:
            for pt in curve.points:
                w.writerow([curve.method, pt.r_fed, _fmt(pt.mean_avg_precision),
                            pt.queries_evaluated, pt.queries_skipped])


def write_overlap_csv(path: str | Path, report: OverlapReport) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["query_id", "set_difference_pct", "weight_difference_pct", "shared_goals"])
        for q in report.per_query:
            w.writerow([q.query_id, _fmt(q.set_difference_pct), _fmt(q.weight_difference_pct),
                        q.shared_goals])
