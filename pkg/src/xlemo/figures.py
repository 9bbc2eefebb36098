"""Rendering evaluation reports to image files.

Figures are drawn on the non-interactive raster backend and written as
PNG with pinned metadata, so rendering the same report twice produces
identical bytes.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from xlemo.evaluation import EvalReport

_PNG_METADATA = {"Software": "xlemo"}
_DPI = 100


def save_confusion_heatmap(report: EvalReport, path: str) -> None:
    """Confusion counts as an annotated heatmap, gold on rows."""
    matrix = report.confusion
    n = len(report.labels)
    fig, ax = plt.subplots(figsize=(1.2 * n + 2.0, 1.2 * n + 1.5))
    image = ax.imshow(matrix, cmap="Blues")
    ax.set_xticks(range(n), labels=report.labels)
    ax.set_yticks(range(n), labels=report.labels)
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    ax.set_title("confusion (%s)" % report.method)
    threshold = matrix.max() / 2.0 if matrix.size else 0.0
    for i in range(n):
        for j in range(n):
            color = "white" if matrix[i, j] > threshold else "black"
            ax.text(j, i, str(int(matrix[i, j])), ha="center", va="center", color=color)
    fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)


def save_f1_bars(report: EvalReport, path: str) -> None:
    """Per-class F1 bars with the support-weighted average as a line."""
    f1_values = [report.scores[label].f1 for label in report.labels]
    positions = np.arange(len(report.labels))
    fig, ax = plt.subplots(figsize=(1.5 * len(report.labels) + 2.0, 4.0))
    ax.bar(positions, f1_values, color="tab:blue")
    ax.axhline(report.weighted_f1, color="tab:red", linestyle="--", label="weighted avg")
    ax.set_xticks(positions, labels=report.labels)
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("F1")
    ax.set_title("per-class F1 (%s)" % report.method)
    ax.legend(loc="upper right")
    for pos, value in zip(positions, f1_values):
        ax.text(pos, value + 0.02, "%.2f" % value, ha="center", va="bottom")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)


def render_report_figures(report: EvalReport, directory: str, stem: str = "report") -> list[str]:
    """Write both figures next to the tabular output; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    heatmap_path = os.path.join(directory, "%s_confusion.png" % stem)
    bars_path = os.path.join(directory, "%s_f1.png" % stem)
    save_confusion_heatmap(report, heatmap_path)
    save_f1_bars(report, bars_path)
    return [heatmap_path, bars_path]
