"""Batch entry points: synthesis, stats, search, evaluation runs, comparison, serving.

Exit codes: 0 success, 1 validation error, 2 I/O error, 64 usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from pertinex import corpus
from pertinex.corpus import (
    InfeasibleParams,
    ParseError,
    SynthParams,
    ValidationError,
    generate_synthetic,
    load_collection,
    load_judgments_tsv,
    save_collection,
)
from pertinex.evaluation import (
    feedback_experiment,
    mean_pr_curve,
    overlap_report,
    pr_curve,
    write_feedback_curve_csv,
    write_overlap_csv,
    write_pr_curve_csv,
)
from pertinex.feedback import DEFAULT_EXPANSION_K
from pertinex.scoring import build_index, score_query

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64


def _load(collection_path: str, judgments_path: str | None):
    collection = load_collection(collection_path)
    judgments = dict(collection.judgments)
    if judgments_path:
        judgments.update(load_judgments_tsv(judgments_path))
    return collection, judgments


def _parse_r_range(spec: str) -> list[int]:
    """Accepts '1..10' or a comma list '1,2,5'."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(x) for x in spec.split(",") if x]
    if not values or any(v < 1 for v in values):
        raise click.BadParameter(f"invalid R range {spec!r}")
    return values


@click.group()
def cli():
    """Goal-indexed knowledge extraction: ranking, feedback, and evaluation."""


@cli.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--objects", type=int, default=SynthParams.object_count, show_default=True)
@click.option("--queries", type=int, default=SynthParams.query_count, show_default=True)
@click.option("--vocabulary", type=int, default=SynthParams.vocabulary_size, show_default=True)
@click.option("--avg-goals-per-object", type=int, default=SynthParams.avg_goals_per_object, show_default=True)
@click.option("--avg-goals-per-query", type=int, default=SynthParams.avg_goals_per_query, show_default=True)
@click.option("--max-frequency", type=int, default=SynthParams.max_frequency, show_default=True)
@click.option("--pertinent-per-query", type=int, default=SynthParams.pertinent_per_query, show_default=True)
def synth(seed, out_path, objects, queries, vocabulary, avg_goals_per_object,
          avg_goals_per_query, max_frequency, pertinent_per_query):
    """Generate a synthetic collection with judgments."""
    params = SynthParams(
        object_count=objects, query_count=queries, vocabulary_size=vocabulary,
        avg_goals_per_object=avg_goals_per_object, avg_goals_per_query=avg_goals_per_query,
        max_frequency=max_frequency, pertinent_per_query=pertinent_per_query,
    )
    collection, _ = generate_synthetic(params, seed=seed)
    save_collection(collection, out_path)
    click.echo(f"wrote {out_path}")


@cli.command()
@click.option("--collection", "collection_path", required=True, type=click.Path(exists=False))
def stats(collection_path):
    """Print collection statistics."""
    s = corpus.stats(load_collection(collection_path))
    click.echo(f"objects:              {s.object_count}")
    click.echo(f"queries:              {s.query_count}")
    click.echo(f"vocabulary:           {s.vocabulary_size}")
    click.echo(f"avg goals per object: {s.avg_goals_per_object:.6f}")
    click.echo(f"avg goals per query:  {s.avg_goals_per_query:.6f}")


@cli.command()
@click.option("--collection", "collection_path", required=True)
@click.option("--goals", required=True, help="Comma-separated goal ids.")
@click.option("--limit", type=int, default=20, show_default=True)
def search(collection_path, goals, limit):
    """Rank objects against an ad-hoc goal query."""
    collection = load_collection(collection_path)
    index = build_index(collection)
    query = corpus.QueryRecord(id="__cli__", goals=tuple(g for g in goals.split(",") if g))
    if not query.goals:
        raise ValidationError("query must contain at least one goal")
    ranked = score_query(index, query)
    click.echo(f"{'rank':>4}  {'object':<16} score")
    for i, scored in enumerate(ranked[:limit], 1):
        click.echo(f"{i:>4}  {scored.object_id:<16} {scored.score:.6f}")


@cli.group(name="eval")
def eval_group():
    """Evaluation runs producing CSVs and figures."""


@eval_group.command(name="pr")
@click.option("--collection", "collection_path", required=True)
@click.option("--judgments", "judgments_path", type=click.Path(), default=None)
@click.option("--out-dir", default=".", show_default=True, type=click.Path(file_okay=False))
def eval_pr(collection_path, judgments_path, out_dir):
    """Interpolated PR curves for the baseline ranking over all judged queries."""
    collection, judgments = _load(collection_path, judgments_path)
    index = build_index(collection)
    per_query = {}
    for query in collection.queries:
        relevant = judgments.get(query.id)
        if not relevant:
            continue
        per_query[query.id] = pr_curve(score_query(index, query), relevant)
    mean_curve = mean_pr_curve(list(per_query.values()))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_pr_curve_csv(out / "pr_curve.csv", per_query, mean_curve)
    from pertinex.plots import plot_pr_curve
    plot_pr_curve(mean_curve, out / "pr_curve.png")
    click.echo(f"wrote {out / 'pr_curve.csv'} and {out / 'pr_curve.png'}")


@eval_group.command(name="feedback")
@click.option("--collection", "collection_path", required=True)
@click.option("--judgments", "judgments_path", type=click.Path(), default=None)
@click.option("--methods", default="baseline,prf,ppf", show_default=True)
@click.option("--R", "r_spec", default="1..10", show_default=True)
@click.option("--k", type=int, default=DEFAULT_EXPANSION_K, show_default=True)
@click.option("--out-dir", default=".", show_default=True, type=click.Path(file_okay=False))
def eval_feedback(collection_path, judgments_path, methods, r_spec, k, out_dir):
    """Feedback curves (mean residual average precision per feedback size)."""
    collection, judgments = _load(collection_path, judgments_path)
    r_values = _parse_r_range(r_spec)
    method_list = [m.strip() for m in methods.split(",") if m.strip()]
    for m in method_list:
        if m not in ("baseline", "prf", "ppf"):
            raise click.BadParameter(f"unknown method {m!r}")
    curves = [feedback_experiment(collection, judgments, m, r_values, k=k)
              for m in method_list]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_feedback_curve_csv(out / "feedback_curve.csv", curves)
    from pertinex.plots import plot_feedback_curves
    plot_feedback_curves(curves, out / "feedback_curve.png")
    click.echo(f"wrote {out / 'feedback_curve.csv'} and {out / 'feedback_curve.png'}")


@cli.command()
@click.option("--collection", "collection_path", required=True)
@click.option("--judgments", "judgments_path", type=click.Path(), default=None)
@click.option("--R", "r", type=int, default=5, show_default=True)
@click.option("--k", type=int, default=DEFAULT_EXPANSION_K, show_default=True)
@click.option("--out-dir", default=".", show_default=True, type=click.Path(file_okay=False))
def compare(collection_path, judgments_path, r, k, out_dir):
    """PRF-vs-PPF expansion overlap statistics."""
    collection, judgments = _load(collection_path, judgments_path)
    report = overlap_report(collection, judgments, r, k=k)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_overlap_csv(out / "overlap.csv", report)
    from pertinex.plots import plot_overlap
    plot_overlap(report, out / "overlap.png")
    click.echo(f"mean set difference:    {report.mean_set_difference_pct:.2f}% "
               f"(reference collection reported {report.reported_set_difference_pct:.0f}%)")
    click.echo(f"mean weight difference: {report.mean_weight_difference_pct:.2f}% "
               f"(reference collection reported {report.reported_weight_difference_pct:.0f}%)")
    click.echo(f"wrote {out / 'overlap.csv'} and {out / 'overlap.png'}")


@cli.command()
@click.option("--collection", "collection_path", required=True)
@click.option("--listen", default=None, help="host:port (default 127.0.0.1:8080, env PERTINEX_LISTEN)")
@click.option("--session-dir", default="sessions", show_default=True)
def serve(collection_path, listen, session_dir):
    """Start the interactive feedback HTTP service."""
    import os

    import uvicorn

    from pertinex.service import create_app

    listen = listen or os.environ.get("PERTINEX_LISTEN", "127.0.0.1:8080")
    host, _, port = listen.rpartition(":")
    collection = load_collection(collection_path)
    app = create_app(collection, session_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as e:
        click.echo(e.format_message(), err=True)
        if e.ctx is not None:
            click.echo(e.ctx.get_usage(), err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_VALIDATION
    except (ValidationError, ParseError, InfeasibleParams, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_VALIDATION
    except OSError as e:
        click.echo(f"I/O error: {e}", err=True)
        return EXIT_IO
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
