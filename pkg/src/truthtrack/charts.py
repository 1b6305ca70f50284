"""SVG chart emission for series results (grouped bars and sweep lines).

matplotlib is imported lazily so that library users who never plot do not
pay for it; the Agg backend keeps everything headless.
"""

from __future__ import annotations

from pathlib import Path


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def grouped_bars(
    path: str | Path,
    title: str,
    group_labels: list[str],
    series: list[tuple[str, list[float]]],
    ylabel: str = "success frequency",
) -> None:
    """Grouped bar chart with percentage annotations, written as SVG.

    ``series`` is a list of (legend label, value per group) pairs; values
    are rates in [0, 1].
    """
    plt = _plt()
    fig, ax = plt.subplots(layout="constrained")
    n_groups = len(group_labels)
    n_series = max(len(series), 1)
    width = 0.8 / n_series
    for k, (label, values) in enumerate(series):
        xs = [g + k * width for g in range(n_groups)]
        bars = ax.bar(xs, values, width, label=label)
        ax.bar_label(bars, labels=[f"{v:.1%}" for v in values], padding=2, fontsize=8)
    ax.set_xticks([g + width * (n_series - 1) / 2 for g in range(n_groups)], group_labels)
    ax.set_ylim(0, 1.1)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(loc="lower right")
    fig.savefig(path, format="svg")
    plt.close(fig)


def sweep_lines(
    path: str | Path,
    title: str,
    xs: list[int],
    rates: list[float],
    xlabel: str = "number of observables",
    ylabel: str = "success frequency",
) -> None:
    """Single success-rate curve over a parameter sweep, written as SVG."""
    plt = _plt()
    fig, ax = plt.subplots(layout="constrained")
    ax.plot(xs, rates, marker="o")
    for x, r in zip(xs, rates):
        ax.annotate(f"{r:.0%}", (x, r), textcoords="offset points", xytext=(0, 6), fontsize=7)
    ax.set_ylim(0, 1.1)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.savefig(path, format="svg")
    plt.close(fig)
