"""Matplotlib figure output for series and per-site snapshots.

Static single-axes line plots, rendered straight to file (svg, png, or pdf
by extension).  These accompany the delimited exports; they are not an
interactive front end.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics import PolarizationSeries

__all__ = ["save_series_plot", "save_snapshot_plot"]


def save_series_plot(
    series_list: list[PolarizationSeries],
    path: str | Path,
    labels: list[str] | None = None,
    title: str | None = None,
) -> None:
    """One polarization-change curve per series, on a shared time axis."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for i, s in enumerate(series_list):
        label = labels[i] if labels else f"N = {s.n_sites} ({s.engine})"
        ax.plot(s.tau_grid, s.delta_p, lw=1.2, label=label)
    ax.set_xlabel(r"$\omega_1 t$")
    ax.set_ylabel(r"$\Delta P$")
    if title:
        ax.set_title(title)
    if len(series_list) > 1 or labels:
        ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_snapshot_plot(
    per_site: np.ndarray, tau: float, path: str | Path
) -> None:
    """Per-site polarization profile at a single time."""
    sites = np.arange(1, per_site.size + 1)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(sites, per_site, lw=1.2)
    ax.set_xlabel("site")
    ax.set_ylabel(r"$\langle \sigma^z_m \rangle$")
    ax.set_ylim(-1.1, 1.1)
    ax.set_title(rf"$\omega_1 t = {tau:g}$")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
