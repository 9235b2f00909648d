"""Figures for solve and verify reports (written to files, never shown)."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_trace(trace: Sequence, path: str, title: str = "") -> None:
    """LP value and number of new cuts per cutting-plane round."""
    rounds = [t.round for t in trace]
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.plot(rounds, [float(t.value) for t in trace], marker="o", color="tab:blue")
    ax.set_xlabel("round")
    ax.set_ylabel("LP value", color="tab:blue")
    ax2 = ax.twinx()
    ax2.bar(rounds, [t.cuts for t in trace], alpha=0.3, color="tab:orange", width=0.6)
    ax2.set_ylabel("new cuts", color="tab:orange")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


_STATUS = {"pass": 1, "info": 0.5, "FAIL": 0}


def plot_verify(instances: Sequence[str], checks: Sequence[str], status: dict, path: str) -> None:
    """Grid of check outcomes; ``status[(instance, check)]`` is pass/info/FAIL."""
    grid = [[_STATUS.get(status.get((i, c)), float("nan")) for c in checks] for i in instances]
    fig, ax = plt.subplots(figsize=(1.2 + 0.8 * len(checks), 1.0 + 0.28 * len(instances)))
    ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(checks)))
    ax.set_xticklabels(checks, rotation=45, ha="right")
    ax.set_yticks(range(len(instances)))
    ax.set_yticklabels(instances, fontsize=7)
    for r, inst in enumerate(instances):
        for k, c in enumerate(checks):
            s = status.get((inst, c))
            if s:
                ax.text(k, r, s, ha="center", va="center", fontsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
