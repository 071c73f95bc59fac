"""Figure rendering for sweep results.

Kept separate from the CLI so matplotlib is only imported (and its Agg
backend selected) when a figure is actually requested.
"""

from __future__ import annotations

from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .pruning import SweepRow


def render_sweep_figure(rows: Sequence[SweepRow], path: str) -> None:
    """Plot error rates and tree size against the pruning strength grid."""
    if not rows:
        raise ValueError("nothing to plot: no sweep rows")
    alphas = [row.alpha for row in rows]
    fig, (ax_err, ax_size) = plt.subplots(
        2, 1, sharex=True, figsize=(7, 6), height_ratios=[3, 2]
    )
    ax_err.plot(alphas, [row.train_err for row in rows], marker="o", label="training error")
    ax_err.plot(alphas, [row.holdout_err for row in rows], marker="s", label="holdout error")
    ax_err.set_ylabel("error rate")
    ax_err.legend()
    ax_err.grid(True, alpha=0.3)
    ax_size.step(alphas, [row.leaves for row in rows], where="post", marker="o")
    ax_size.set_ylabel("leaves")
    ax_size.set_xlabel("complexity charge per test (alpha)")
    ax_size.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
