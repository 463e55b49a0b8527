"""Report figures written next to the CSV/JSON outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .weights import WeightDistribution  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "ovalcode",
}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {"Software": None} if path.suffix == ".png" else {}
    fig.savefig(path, bbox_inches="tight", metadata=meta)
    plt.close(fig)
    return path


def plot_weight_distribution(observed: WeightDistribution, path, expected: WeightDistribution | None = None,
                             title: str | None = None):
    """Bar chart of A_w for w >= 1, with the closed form overlaid as markers."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ws = [w for w in range(1, observed.n + 1)]
        ax.bar(ws, [observed[w] for w in ws], color="0.55", label="enumerated")
        if expected is not None:
            pts = [(w, expected[w]) for w in ws if expected[w]]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "o", mfc="none", mec="C3",
                    label="closed form")
        lo = observed.min_distance or 1
        ax.set_xlim(lo - 1.5, observed.n + 0.5)
        ax.set_xlabel("Hamming weight")
        ax.set_ylabel("codewords")
        ax.set_title(title or f"weight distribution, n={observed.n}")
        ax.legend()
        return _save(fig, path)


def plot_case_buckets(observed: dict[str, int], expected: dict[str, int], path, title: str | None = None):
    """Weight-3 dual codewords per case bucket; only buckets with any count are drawn."""
    labels = [k for k in observed if observed[k] or expected.get(k)]
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.2))
        xs = range(len(labels))
        ax.bar([x - 0.2 for x in xs], [observed[k] for k in labels], width=0.4,
               color="0.55", label="enumerated")
        ax.bar([x + 0.2 for x in xs], [expected.get(k, 0) for k in labels], width=0.4,
               color="C3", alpha=0.7, label="closed form")
        ax.set_xticks(list(xs))
        ax.set_xticklabels(labels, rotation=45, ha="right")
        ax.set_ylabel("weight-3 dual codewords")
        ax.set_title(title or "weight-3 dual codewords by case")
        ax.legend()
        return _save(fig, path)
