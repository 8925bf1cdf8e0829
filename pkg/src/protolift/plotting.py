"""Figure rendering for simulation curves and stopping-weight spectra.

Figures are written straight to files; the CSV/JSON outputs stay the
primary artifacts and these renderings sit alongside them.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_fer_curves(curves, path, *, title="BEC peeling performance") -> str:
    """Render frame-error-rate curves on log-log axes.

    Args:
        curves: iterable of (label, [SimResult, ...]) pairs.
        path: output image path (extension picks the format).

    Returns:
        The path written.
    """
    fig, ax = plt.subplots(figsize=(6, 4.5))
    any_positive = False
    for label, results in curves:
        pts = sorted(results, key=lambda r: r.epsilon)
        eps = np.array([r.epsilon for r in pts], dtype=float)
        fer = np.array([r.fer for r in pts], dtype=float)
        err = np.array([r.stderr_fer for r in pts], dtype=float)
        any_positive = any_positive or bool((fer > 0).any())
        ax.errorbar(eps, fer, yerr=err, marker="o", capsize=3, label=label)
    ax.set_xscale("log")
    if any_positive:  # log scale is meaningless for all-zero curves
        ax.set_yscale("log")
    ax.set_xlabel("erasure probability")
    ax.set_ylabel("frame error rate")
    ax.set_title(title)
    ax.grid(True, which="both", linestyle="--", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_weight_distribution(report, path, *, title="Stopping-set weights") -> str:
    """Render a stopping-weight spectrum A_w as a bar chart.

    Args:
        report: a StoppingReport.
        path: output image path.

    Returns:
        The path written.
    """
    weights = np.arange(1, report.max_weight + 1)
    counts = np.array([report.counts.get(int(w), 0) for w in weights], dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.bar(weights, counts, width=0.8)
    ax.set_xlabel("weight w")
    ax.set_ylabel("stopping sets of weight w")
    ax.set_title(title if report.exhaustive else f"{title} (partial)")
    ax.set_xticks(weights)
    ax.grid(True, axis="y", linestyle="--", alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
