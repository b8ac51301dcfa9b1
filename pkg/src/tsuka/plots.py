"""Figure rendering for membership curves and batch score reports.

Report-generating CLI commands drop a PNG next to their CSV output; this
module owns that rendering.  Uses the Agg backend so it works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .inference import LinguisticVariable
from .store import BatchReport

CURVE_POINTS = 201


def sample_terms(variable: LinguisticVariable, points: int = CURVE_POINTS):
    """Evenly spaced samples of every term curve across the universe."""
    xs = [
        variable.lo + i * (variable.hi - variable.lo) / (points - 1)
        for i in range(points)
    ]
    curves = {
        term: [mf.evaluate(x) for x in xs] for term, mf in variable.terms.items()
    }
    return xs, curves


def render_membership(variable: LinguisticVariable, path, points: int = CURVE_POINTS) -> None:
    xs, curves = sample_terms(variable, points)
    fig, ax = plt.subplots(figsize=(7, 4))
    for term, ys in curves.items():
        ax.plot(xs, ys, label=term, linewidth=2)
    ax.set_xlabel(variable.name)
    ax.set_ylabel("membership degree")
    ax.set_xlim(variable.lo, variable.hi)
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="center right")
    ax.set_title(f"term curves: {variable.name}")
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120)
    plt.close(fig)


def render_score_histogram(report: BatchReport, threshold: float, path) -> None:
    scores = np.array([a.score for a in report.assessments], dtype=float)
    fig, ax = plt.subplots(figsize=(7, 4))
    if scores.size:
        ax.hist(scores, bins=np.linspace(0.0, 100.0, 21), edgecolor="black", alpha=0.75)
    ax.axvline(threshold, color="red", linestyle="--", linewidth=1.5,
               label=f"accept at {threshold:g}")
    accepted = int(np.count_nonzero(scores >= threshold)) if scores.size else 0
    ax.set_xlabel("eligibility score")
    ax.set_ylabel("applicants")
    ax.set_title(f"batch of {report.rows_total}: {accepted} accepted, "
                 f"{report.rows_ok - accepted} rejected, {report.rows_failed} failed rows")
    ax.legend()
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120)
    plt.close(fig)
