"""Figure rendering for the evaluation reports.

Each eval/compare subcommand writes a PNG next to its CSV.  Uses the Agg
backend so plots render in headless environments.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from pertinex.evaluation import FeedbackCurve, OverlapReport, PRPoint


def plot_pr_curve(mean_curve: list[PRPoint], path: str | Path, title: str = "Interpolated PR curve") -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot([p.recall_level for p in mean_curve], [p.precision for p in mean_curve],
            marker="o", color="tab:blue")
    ax.set_xlabel("Recall (pertinent-extracted)")
    ax.set_ylabel("Precision")
    ax.set_title(title)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.05)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_feedback_curves(curves: list[FeedbackCurve], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    styles = {"baseline": ("tab:gray", "--"), "prf": ("tab:orange", "-"), "ppf": ("tab:blue", "-")}
    for curve in curves:
        color, ls = styles.get(curve.method, ("tab:green", "-"))
        ax.plot([p.r_fed for p in curve.points],
                [p.mean_avg_precision for p in curve.points],
                marker="o", label=curve.method, color=color, linestyle=ls)
    ax.set_xlabel("Pertinent objects fed back (R)")
    ax.set_ylabel("Mean average precision (residual)")
    ax.set_title("Feedback performance vs training size")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_overlap(report: OverlapReport, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    qids = [q.query_id for q in report.per_query]
    ax.bar(range(len(qids)), [q.set_difference_pct for q in report.per_query],
           color="tab:blue", label="expansion-set difference %")
    ax.axhline(report.mean_set_difference_pct, color="tab:blue", linestyle="--",
               label=f"mean {report.mean_set_difference_pct:.1f}%")
    ax.axhline(report.reported_set_difference_pct, color="tab:red", linestyle=":",
               label=f"reported reference {report.reported_set_difference_pct:.0f}%")
    ax.set_xticks(range(len(qids)))
    ax.set_xticklabels(qids, rotation=90, fontsize=7)
    ax.set_ylabel("Set difference (%)")
    ax.set_title("PRF vs PPF expansion overlap per query")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
