"""Figure rendering for the CLI report paths.

Uses the Agg backend so figures render to files in headless environments;
every renderer takes data that the CLI already emitted as CSV/JSON, so a
figure never contains information the delimited output lacks.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_curve(path: str, xs: Sequence[float], ys: Sequence[float], xlabel: str, title: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(xs, ys, lw=1.5, color="tab:purple")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("density")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def render_histogram(
    path: str,
    centers: Sequence[float],
    widths: Sequence[float],
    densities: Sequence[float],
    xlabel: str,
    title: str,
    overlay: tuple[Sequence[float], Sequence[float], str] | None = None,
) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.bar(centers, densities, width=widths, color="0.75", edgecolor="0.4", label="sampled")
    if overlay is not None:
        xs, ys, label = overlay
        ax.plot(xs, ys, lw=1.5, color="tab:red", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def render_comparison(
    path: str,
    centers: Sequence[float],
    empirical: Sequence[float],
    curves: Mapping[int, Sequence[float]],
    xlabel: str,
    title: str,
) -> None:
    """Two panels: densities on a log scale, and per-bin differences."""
    centers = np.asarray(centers)
    empirical = np.asarray(empirical)
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(6.4, 6.8), sharex=True, height_ratios=[2, 1]
    )
    top.semilogy(centers, np.maximum(empirical, 1e-12), "k-", lw=1.6, label="sampled")
    for order, ys in sorted(curves.items()):
        ys = np.asarray(ys)
        top.semilogy(centers, np.maximum(ys, 1e-12), "--", lw=1.2, label=f"order {order}")
        bottom.plot(centers, ys - empirical, lw=1.2, label=f"order {order}")
    bottom.axhline(0.0, color="k", lw=0.8)
    top.set_ylabel("density")
    top.set_title(title)
    top.legend(fontsize=8)
    bottom.set_xlabel(xlabel)
    bottom.set_ylabel("expansion - sampled")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
