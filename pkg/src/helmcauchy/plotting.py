"""Report figures rendered with matplotlib (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def field_panels(fields: dict, path, title: str | None = None, cmap: str = "viridis") -> Path:
    """One heatmap per field, side by side, each with its own colorbar."""
    n = len(fields)
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 3.6), squeeze=False)
    for ax, (label, u) in zip(axes[0], fields.items()):
        im = ax.imshow(np.asarray(u).T, origin="lower", extent=(0, 1, 0, 1),
                       aspect="auto", cmap=cmap)
        ax.set_title(label, fontsize=10)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        fig.colorbar(im, ax=ax, shrink=0.85)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def error_curve(eps, mean, std, path, title: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.errorbar(eps, mean, yerr=std, marker="o", capsize=3)
    ax.set_xlabel("noise level eps")
    ax.set_ylabel("relative error E (%)")
    if np.all(np.asarray(mean) > 0) and np.max(mean) / np.min(mean) > 1e3:
        ax.set_yscale("log")
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
