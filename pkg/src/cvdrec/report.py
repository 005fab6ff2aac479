"""Figure and CSV output for the simulation and survey commands."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIGURE_DPI = 150


def save_subclass_figure(subclass_counts: dict[str, int], path: str | Path) -> Path:
    """Bar chart of how often each class combination appeared in a run.

    Keys are five-character flag strings ("01100" = classes 2 and 3 set).
    """
    path = Path(path)
    keys = sorted(subclass_counts)
    counts = [subclass_counts[k] for k in keys]

    fig, ax = plt.subplots(figsize=(10, 4.5))
    ax.bar(range(len(keys)), counts, color="#4878a8")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=45, ha="right", fontsize=8)
    ax.set_xlabel("class vector (c1..c5)")
    ax.set_ylabel("records")
    ax.set_title("Sub-class coverage")
    ax.margins(x=0.01)
    fig.tight_layout()
    fig.savefig(path, dpi=FIGURE_DPI)
    plt.close(fig)
    return path


def save_subclass_csv(subclass_counts: dict[str, int], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["class_vector", "records"])
        for key in sorted(subclass_counts):
            writer.writerow([key, subclass_counts[key]])
    return path


def save_dus_figure(labels: list[str], values: list[float], path: str | Path) -> Path:
    """Horizontal bar chart of per-question usability scores (0..1)."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8, 0.5 * max(len(labels), 4) + 1.5))
    positions = range(len(labels))
    ax.barh(positions, values, color="#5a9e6f")
    ax.set_yticks(positions)
    ax.set_yticklabels(labels, fontsize=9)
    ax.invert_yaxis()
    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("degree of usability (mean / 5)")
    ax.set_title("Survey usability scores")
    for pos, value in zip(positions, values):
        ax.text(value + 0.01, pos, f"{value:.2f}", va="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=FIGURE_DPI)
    plt.close(fig)
    return path


def save_dus_csv(labels: list[str], values: list[float], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["question", "dus"])
        for label, value in zip(labels, values):
            writer.writerow([label, f"{value:.4f}"])
    return path
