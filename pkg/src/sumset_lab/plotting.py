"""Figure rendering for sweep outputs; saved to files next to the CSV/JSON.

Matplotlib is imported lazily with the Agg backend so headless runs work and
the import cost is only paid when a plot is requested.
"""

from __future__ import annotations


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_series(path: str, xs, ys, xlabel: str, ylabel: str, title: str) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    ax.plot([float(x) for x in xs], [float(y) for y in ys], marker="o", lw=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_multi_series(path: str, series, xlabel: str, ylabel: str, title: str) -> None:
    """series: list of (label, xs, ys)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    for label, xs, ys in series:
        ax.plot([float(x) for x in xs], [float(y) for y in ys], marker="o", lw=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
