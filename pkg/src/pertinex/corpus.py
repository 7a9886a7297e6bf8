"""Goal-indexed collections: loading, validation, stats, and synthetic generation.

A collection bundles a goal vocabulary, objects (goal occurrence maps), queries
(ordered goal lists), and pertinence judgments.  The on-disk schema is a single
JSON document tagged ``"format": "pertinex-v1"``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

FORMAT_TAG = "pertinex-v1"


class ValidationError(ValueError):
    """A collection (or one of its records) violates an invariant."""


class ParseError(ValueError):
    """The collection file is not well-formed."""


@dataclass(frozen=True)
class ObjectRecord:
    id: str
    occurrences: dict[str, int]  # goal-id -> frequency, each >= 1

    @property
    def unique_goal_count(self) -> int:
        return len(self.occurrences)


@dataclass(frozen=True)
class QueryRecord:
    id: str
    goals: tuple[str, ...]


@dataclass(frozen=True)
class CollectionStats:
    object_count: int
    query_count: int
    vocabulary_size: int
    avg_goals_per_query: float
    avg_goals_per_object: float


@dataclass
class Collection:
    """Immutable after construction; validated by `validate`."""

    vocabulary: tuple[str, ...]
    objects: list[ObjectRecord]
    queries: list[QueryRecord]
    judgments: dict[str, set[str]] = field(default_factory=dict)

    def object_ids(self) -> set[str]:
        return {o.id for o in self.objects}

    def get_object(self, object_id: str) -> ObjectRecord:
        for o in self.objects:
            if o.id == object_id:
                return o
        raise KeyError(object_id)


def validate(collection: Collection) -> Collection:
    """Check every collection invariant; raise ValidationError on the first violation."""
    vocab = set()
    for g in collection.vocabulary:
        if not g or any(c.isspace() for c in g):
            raise ValidationError(f"goal id {g!r} is empty or contains whitespace")
        if g in vocab:
            raise ValidationError(f"duplicate goal id in vocabulary: {g!r}")
        vocab.add(g)

    seen_objects = set()
    for obj in collection.objects:
        if obj.id in seen_objects:
            raise ValidationError(f"duplicate object id: {obj.id!r}")
        seen_objects.add(obj.id)
        if not obj.occurrences:
            raise ValidationError(f"object {obj.id!r} has no goal occurrences")
        for goal, freq in obj.occurrences.items():
            if goal not in vocab:
                raise ValidationError(
                    f"object {obj.id!r} references goal {goal!r} absent from vocabulary"
                )
            if not isinstance(freq, int) or freq < 1:
                raise ValidationError(
                    f"object {obj.id!r} has non-positive frequency for goal {goal!r}"
                )

    seen_queries = set()
    for q in collection.queries:
        if q.id in seen_queries:
            raise ValidationError(f"duplicate query id: {q.id!r}")
        seen_queries.add(q.id)
        if not q.goals:
            raise ValidationError(f"query {q.id!r} has no goals")
        if len(set(q.goals)) != len(q.goals):
            raise ValidationError(f"query {q.id!r} contains duplicate goals")
        for goal in q.goals:
            if goal not in vocab:
                raise ValidationError(
                    f"query {q.id!r} references goal {goal!r} absent from vocabulary"
                )

    for qid, objs in collection.judgments.items():
        if qid not in seen_queries:
            raise ValidationError(f"judgments reference unknown query id {qid!r}")
        for oid in objs:
            if oid not in seen_objects:
                raise ValidationError(
                    f"judgments for query {qid!r} reference unknown object id {oid!r}"
                )
    return collection


def load_collection(path: str | Path) -> Collection:
    """Load and validate a pertinex-v1 collection file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise ParseError(f"{path}: missing or unsupported format tag (expected {FORMAT_TAG!r})")
    try:
        collection = Collection(
            vocabulary=tuple(doc["vocabulary"]),
            objects=[
                ObjectRecord(id=o["id"], occurrences={g: int(f) for g, f in o["occurrences"].items()})
                for o in doc["objects"]
            ],
            queries=[QueryRecord(id=q["id"], goals=tuple(q["goals"])) for q in doc["queries"]],
            judgments={qid: set(oids) for qid, oids in doc.get("judgments", {}).items()},
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise ParseError(f"{path}: malformed collection document ({e})") from e
    return validate(collection)


def save_collection(collection: Collection, path: str | Path) -> None:
    """Write the canonical byte-stable JSON form (sorted keys, fixed separators)."""
    doc = {
        "format": FORMAT_TAG,
        "vocabulary": list(collection.vocabulary),
        "objects": [
            {"id": o.id, "occurrences": dict(sorted(o.occurrences.items()))}
            for o in collection.objects
        ],
        "queries": [{"id": q.id, "goals": list(q.goals)} for q in collection.queries],
        "judgments": {qid: sorted(oids) for qid, oids in sorted(collection.judgments.items())},
    }
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n", encoding="utf-8")


def load_judgments_tsv(path: str | Path) -> dict[str, set[str]]:
    """Read `query-id<TAB>object-id` pairs, one per line; blank lines ignored."""
    judgments: dict[str, set[str]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(f"{path}: line {lineno}: expected 'query-id<TAB>object-id'")
        judgments.setdefault(parts[0], set()).add(parts[1])
    return judgments


def stats(collection: Collection) -> CollectionStats:
    nq = len(collection.queries)
    no = len(collection.objects)
    return CollectionStats(
        object_count=no,
        query_count=nq,
        vocabulary_size=len(collection.vocabulary),
        avg_goals_per_query=(sum(len(q.goals) for q in collection.queries) / nq) if nq else 0.0,
        avg_goals_per_object=(sum(o.unique_goal_count for o in collection.objects) / no) if no else 0.0,
    )


@dataclass(frozen=True)
class SynthParams:
    """Generation parameters; defaults follow the word-processor test-collection profile."""

    object_count: int = 140
    query_count: int = 25
    vocabulary_size: int = 50
    avg_goals_per_object: int = 6
    avg_goals_per_query: int = 3
    max_frequency: int = 5
    pertinent_per_query: int = 10


class InfeasibleParams(ValueError):
    """Synthetic-generation parameters cannot be satisfied."""


def _geometric(rng: random.Random, mean: float, upper: int) -> int:
    # Inverse-CDF sample of a geometric on {1, 2, ...} with the requested mean,
    # clamped to the vocabulary size.
    p = 1.0 / mean
    u = rng.random()
    k = math.ceil(math.log(1.0 - u) / math.log(1.0 - p)) if p < 1.0 else 1
    return min(max(k, 1), upper)


def _draw_lengths(rng: random.Random, count: int, mean: float, upper: int) -> list[int]:
    """Geometric-like lengths, nudged so the sample mean lands within 10% of target."""
    lengths = [_geometric(rng, mean, upper) for _ in range(count)]
    for _ in range(20 * count):
        current = sum(lengths) / count
        if abs(current - mean) <= 0.1 * mean:
            break
        i = rng.randrange(count)
        if current > mean and lengths[i] > 1:
            lengths[i] -= 1
        elif current < mean and lengths[i] < upper:
            lengths[i] += 1
    return lengths


def generate_synthetic(
    params: SynthParams = SynthParams(), seed: int = 0
) -> tuple[Collection, dict[str, set[str]]]:
    """Deterministically synthesize a collection with topical structure.

    Objects are grouped into topics; each topic owns a goal pool from which its
    objects draw roughly half their goals.  Each query targets one topic, sampling
    its goals from the pool, and its pertinent set is drawn from that topic's
    objects, so pertinent objects correlate beyond the query goals themselves.
    Every designated pertinent object is guaranteed to share at least one query
    goal (planted when sampling alone does not provide one).
    """
    p = params
    for name in ("object_count", "query_count", "vocabulary_size", "avg_goals_per_object",
                 "avg_goals_per_query", "max_frequency", "pertinent_per_query"):
        if getattr(p, name) < 1:
            raise InfeasibleParams(f"{name} must be >= 1")
    if p.avg_goals_per_object > p.vocabulary_size or p.avg_goals_per_query > p.vocabulary_size:
        raise InfeasibleParams("average goal counts cannot exceed vocabulary size")
    if p.pertinent_per_query > p.object_count:
        raise InfeasibleParams(
            f"pertinent_per_query={p.pertinent_per_query} exceeds object_count={p.object_count}"
        )

    rng = random.Random(seed)
    width = max(3, len(str(p.vocabulary_size - 1)))
    vocabulary = tuple(f"g{i:0{width}d}" for i in range(p.vocabulary_size))

    topic_count = max(1, min(p.query_count, p.object_count // p.pertinent_per_query))
    pool_size = min(p.vocabulary_size, max(4, 2 * p.avg_goals_per_object))
    topic_pools = [rng.sample(vocabulary, pool_size) for _ in range(topic_count)]
    object_topics = [i % topic_count for i in range(p.object_count)]
    rng.shuffle(object_topics)

    obj_lengths = _draw_lengths(rng, p.object_count, p.avg_goals_per_object, p.vocabulary_size)
    occurrences: list[dict[str, int]] = []
    for topic, length in zip(object_topics, obj_lengths):
        pool = topic_pools[topic]
        from_pool = min(len(pool), (length + 1) // 2)
        goals = set(rng.sample(pool, from_pool))
        while len(goals) < length:
            goals.add(rng.choice(vocabulary))
        occurrences.append({g: rng.randint(1, p.max_frequency) for g in sorted(goals)})

    owidth = max(3, len(str(p.object_count - 1)))
    qwidth = max(2, len(str(p.query_count - 1)))
    topic_members: dict[int, list[int]] = {t: [] for t in range(topic_count)}
    for i, t in enumerate(object_topics):
        topic_members[t].append(i)

    query_lengths = _draw_lengths(rng, p.query_count, p.avg_goals_per_query, p.vocabulary_size)
    queries: list[QueryRecord] = []
    judgments: dict[str, set[str]] = {}
    for qi, qlen in enumerate(query_lengths):
        topic = qi % topic_count
        pool = topic_pools[topic]
        qgoals = rng.sample(pool, min(qlen, len(pool)))
        qid = f"q{qi:0{qwidth}d}"
        queries.append(QueryRecord(id=qid, goals=tuple(qgoals)))

        members = topic_members[topic]
        if len(members) >= p.pertinent_per_query:
            chosen = rng.sample(members, p.pertinent_per_query)
        else:
            extra = rng.sample(
                [i for i in range(p.object_count) if i not in members],
                p.pertinent_per_query - len(members),
            )
            chosen = members + extra
        for oi in chosen:
            if not any(g in occurrences[oi] for g in qgoals):
                occurrences[oi][rng.choice(qgoals)] = rng.randint(1, p.max_frequency)
        judgments[qid] = {f"o{oi:0{owidth}d}" for oi in chosen}

    objects = [
        ObjectRecord(id=f"o{i:0{owidth}d}", occurrences=dict(sorted(occ.items())))
        for i, occ in enumerate(occurrences)
    ]
    collection = validate(Collection(
        vocabulary=vocabulary, objects=objects, queries=queries, judgments=judgments
    ))
    return collection, judgments
