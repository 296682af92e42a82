"""Figure rendering for the report-producing CLI paths.

Each renderer writes a PNG next to the delimited output; figures are a
convenience view of the same rows, never a data source.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Dict, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def figure_path(out_path: str) -> str:
    return str(Path(out_path).with_suffix(".png"))


def render_neumann_report(
    rows: Sequence[Tuple[int, float, float]], ell: int, q: int, path: str
) -> None:
    """Exact vs predicted CDF of the iteration count."""
    ks = [row[0] for row in rows]
    exact = [row[1] for row in rows]
    predicted = [row[2] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.step(ks, exact, where="post", label="exact (run-length DP)")
    ax.plot(ks, predicted, "x--", label="double-exponential prediction")
    ax.set_xlabel("k")
    ax.set_ylabel("P(t ≤ k)")
    ax.set_title(f"von Neumann iterations, q={q}, length {ell}")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_joint_distribution(
    dist: Dict[Tuple[int, int], Fraction], ell: int, system: str, path: str
) -> None:
    """Heatmap of the joint carry-count measure."""
    if not dist:
        return
    m_max = max(m for m, _ in dist)
    n_max = max(n for _, n in dist)
    grid = [[0.0] * (m_max + 1) for _ in range(n_max + 1)]
    for (m, n), mass in dist.items():
        grid[n][m] = float(mass)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    image = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis")
    ax.set_xlabel("positive carries m")
    ax.set_ylabel("negative carries n")
    ax.set_title(f"joint carry distribution, {system}, length {ell}")
    fig.colorbar(image, ax=ax, label="probability")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_neumann_histogram(
    histogram: Dict[int, int], ell: int, system: str, path: str
) -> None:
    """Empirical distribution of simulated iteration counts."""
    keys = sorted(histogram)
    total = sum(histogram.values())
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.bar(keys, [histogram[k] / total for k in keys], width=0.85)
    ax.set_xlabel("iterations t")
    ax.set_ylabel("relative frequency")
    ax.set_title(f"simulated von Neumann iterations, {system}, length {ell}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
