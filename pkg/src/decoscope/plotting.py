"""Report figures rendered to files next to the delimited outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .coherent import QGrid
from .metrics import JmDistribution, StepTrace


def save_rate_figure(trace: StepTrace, path) -> None:
    """T1 and T2 scores against step index, stacked panels."""
    idx = [s.index for s in trace.steps]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 5))
    ax1.plot(idx, [s.t1 for s in trace.steps], lw=1, marker=".", ms=3)
    ax1.set_ylabel(r"$\gamma/\gamma_0$ (T1)")
    ax2.plot(idx, [s.t2 for s in trace.steps], lw=1, marker=".", ms=3,
             color="tab:red")
    ax2.set_ylabel(r"$\Gamma/\Gamma_0$ (T2)")
    ax2.set_xlabel("computational step")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.suptitle(f"collective rates, n={trace.n}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_pjm_figure(panels: list[tuple[str, JmDistribution]], path) -> None:
    """Bar panels of P(j, m), one subplot per supplied (label, distribution)."""
    count = len(panels)
    cols = min(2, count)
    rows = (count + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(5.5 * cols, 3.2 * rows),
                             squeeze=False)
    for slot, ax in enumerate(axes.reshape(-1)):
        if slot >= count:
            ax.axis("off")
            continue
        label, dist = panels[slot]
        js = sorted({j for j, _ in dist.entries}, reverse=True)
        width = 0.8 / len(js)
        for qi, j in enumerate(js):
            ms = np.arange(-j, j + 0.5)
            ps = [dist.prob(j, m) for m in ms]
            ax.bar(ms + (qi - (len(js) - 1) / 2) * width, ps, width,
                   label=f"j={j:g}")
        ax.set_title(label, fontsize=9)
        ax.set_xlabel("m")
        ax.set_ylabel("P(j, m)")
        if slot == 0:
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_q_figure(grid: QGrid, path) -> None:
    """Grayscale Q map on the (phi, theta) plane; Q=1 renders black."""
    fig, ax = plt.subplots(figsize=(7, 4))
    image = ax.imshow(grid.values, cmap="gray_r", vmin=0.0, vmax=1.0,
                      origin="upper", aspect="auto",
                      extent=(float(grid.phis[0]), float(grid.phis[-1]),
                              float(grid.thetas[-1]), float(grid.thetas[0])))
    fig.colorbar(image, ax=ax, label="Q")
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel("theta (rad)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
