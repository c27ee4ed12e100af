"""Figure rendering for the report-producing commands.

Every tabular report the CLI writes (PR curves, parameter sweeps) can be
rendered to a PNG next to the CSV.  Rendering uses the Agg backend so it
works headless; the data files stay the source of truth and the figures
are a convenience for eyeballing runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_pr_curve(points, out_path: str | Path,
                    label: str = "annotator") -> Path:
    """Plot macro precision against macro recall, one marker per cutoff."""
    out_path = Path(out_path)
    recalls = [p.recall * 100 for p in points]
    precisions = [p.precision * 100 for p in points]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(recalls, precisions, marker="x", color="tab:blue", label=label)
    for p, x, y in zip(points, recalls, precisions):
        if p.cutoff in (1, 5, 10) or p.cutoff == len(points):
            ax.annotate(str(p.cutoff), (x, y), fontsize=8,
                        textcoords="offset points", xytext=(4, 4))
    ax.set_xlabel("recall (%)")
    ax.set_ylabel("precision (%)")
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    ax.grid(True, linestyle=":", linewidth=0.5)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_sweep(values, f_scores, parameter: str,
                 out_path: str | Path) -> Path:
    """Plot macro F against the swept parameter value."""
    out_path = Path(out_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(list(values), [f * 100 for f in f_scores], marker="x",
            color="tab:blue")
    ax.set_xlabel(parameter)
    ax.set_ylabel("f-score (%)")
    ax.grid(True, linestyle=":", linewidth=0.5)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
