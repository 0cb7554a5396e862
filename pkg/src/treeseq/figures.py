"""Render breakdown reports as figures next to their delimited output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import BreakdownReport  # noqa: E402


def _bar_chart(rows, title: str, xlabel: str, path: str,
               annotate_span: bool = False) -> None:
    keys = [r.key for r in rows]
    if annotate_span:
        keys = ["%s (%.1f)" % (r.key, r.mean_span) for r in rows]
    values = [r.f1 for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 1.5), 3.2))
    ax.bar(range(len(rows)), values, color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(keys, rotation=30, ha="right", fontsize=8)
    ax.set_ylim(0, 100)
    ax.set_ylabel("F1")
    ax.set_xlabel(xlabel)
    ax.set_title(title)
    for i, v in enumerate(values):
        ax.text(i, v + 1, "%.1f" % v, ha="center", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_breakdown_figures(report: BreakdownReport, out_dir: str,
                           max_labels: int = 12) -> list[str]:
    """Write one bar chart per breakdown table; returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    tables = (
        (report.span, "F1 by span length", "span length (words)",
         "span_length.png", False),
        (report.sentence, "F1 by sentence length", "sentence length (words)",
         "sentence_length.png", False),
        (report.labels[:max_labels], "F1 by label (mean gold span)", "label",
         "labels.png", True),
    )
    for rows, title, xlabel, name, annotate in tables:
        if not rows:
            continue
        path = os.path.join(out_dir, name)
        _bar_chart(rows, title, xlabel, path, annotate_span=annotate)
        written.append(path)
    return written
