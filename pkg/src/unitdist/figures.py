"""Rendering of catalog coordinates to figure files.

Coordinate echoes only: points and segments of a construction record, with
optional unit circles for the arc reports.  Written via the Agg backend so
batch runs need no display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle


def render_construction(rec, path, extra_edges=None, circles=False, caption=None):
    """Draw a record's points and claimed edges to ``path`` (format by suffix).

    ``extra_edges`` are drawn dashed (derived unit pairs beyond the claim);
    ``circles`` adds the unit circle around every point.
    """
    xs = [float(x) for x, _ in rec.coords]
    ys = [float(y) for _, y in rec.coords]
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    if circles:
        for x, y in zip(xs, ys):
            ax.add_patch(Circle((x, y), 1.0, fill=False, linewidth=0.4,
                                color="tab:gray", alpha=0.45))
    for a, b in rec.edges:
        ax.plot([xs[a], xs[b]], [ys[a], ys[b]], color="tab:blue", linewidth=1.4)
    for a, b in extra_edges or []:
        ax.plot([xs[a], xs[b]], [ys[a], ys[b]], color="tab:orange",
                linewidth=1.0, linestyle="--")
    ax.plot(xs, ys, "o", color="black", markersize=4)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(caption or f"{rec.id}: {rec.n} points, {rec.claimed_count} segments",
                 fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
