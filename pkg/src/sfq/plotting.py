"""Figures for stage reports.  Written as PNG without timestamps or version tags
so that repeated runs give identical bytes."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .induction import LogEntry  # noqa: E402
from .oc import FAIL, PASS, UNCHECKED, Verdict  # noqa: E402

_STATUS = {PASS: 2, UNCHECKED: 1, FAIL: 0}


def _verdict_grid(report: Sequence[Verdict]):
    mixed = [v for v in report if v.check == "mc" and v.corolla.color == "o" and v.corolla.n >= 1]
    if not mixed:
        return None
    nmax = max(v.corolla.n for v in mixed)
    kmax = max(v.corolla.k for v in mixed)
    grid = [[float("nan")] * (nmax + 1) for _ in range(kmax + 1)]
    for v in mixed:
        grid[v.corolla.k][v.corolla.n] = _STATUS[v.status]
    return grid


def stage_figure(log: Sequence[LogEntry], report: Sequence[Verdict], path) -> None:
    """Left: size of every linear system solved, by stage.  Right: MC verdicts over (n, k)."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4), dpi=100)
    solved = [e for e in log if e.cols]
    if solved:
        xs = range(len(solved))
        ax1.bar(xs, [e.cols for e in solved], color=[f"C{e.stage % 10}" for e in solved])
        ax1.set_xticks(list(xs))
        ax1.set_xticklabels([e.tag for e in solved], rotation=90, fontsize=7)
        ax1.set_yscale("log")
    ax1.set_ylabel("unknowns")
    ax1.set_title("linear systems")
    grid = _verdict_grid(report)
    if grid is not None:
        cmap = ListedColormap(["tab:red", "lightgrey", "tab:green"])
        ax2.imshow(grid, origin="lower", cmap=cmap, vmin=0, vmax=2, aspect="auto")
        ax2.set_xlabel("n")
        ax2.set_ylabel("k")
    ax2.set_title("MC check (green pass, grey unchecked, red fail)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, format="png", metadata={"Software": None})
    plt.close(fig)
