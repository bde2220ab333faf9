"""Figure rendering for the report paths (network diagrams, score charts).

Figures are a display convenience only; every figure value originates from
exact rationals and is converted to float at the last moment.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .networks import Network
from .rationals import Rational, format_rational


def _layout(labels) -> Dict[str, tuple]:
    n = len(labels)
    return {
        lab: (math.cos(2 * math.pi * i / n + math.pi / 2),
              math.sin(2 * math.pi * i / n + math.pi / 2))
        for i, lab in enumerate(labels)
    }


def render_network_figure(network: Network, path: str, title: str = "") -> None:
    """Draw the capacity digraph: vertices on a circle, one curved arrow per
    nonzero arc, labelled with its exact capacity."""
    pos = _layout(network.alternatives.labels)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)

    for lab, (x, y) in pos.items():
        ax.add_patch(plt.Circle((x, y), 0.09, color="#2c5f8a", zorder=3))
        ax.text(x, y, lab, color="white", ha="center", va="center", zorder=4, fontsize=11)

    for (u, v, c) in network.items():
        if c == 0:
            continue
        (x1, y1), (x2, y2) = pos[u], pos[v]
        arrow = FancyArrowPatch(
            (x1, y1), (x2, y2),
            connectionstyle="arc3,rad=0.15",
            arrowstyle="-|>", mutation_scale=14,
            shrinkA=12, shrinkB=12, color="#444444", zorder=2,
        )
        ax.add_patch(arrow)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        # offset the label to the arc's side so opposite arcs do not overlap
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        ox, oy = -dy / norm * 0.22, dx / norm * 0.22
        ax.text(mx + ox, my + oy, format_rational(c),
                ha="center", va="center", fontsize=9, color="#222222")

    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_score_figure(scores: Mapping[str, Rational], rule_id: str, path: str) -> None:
    """Bar chart of a rule's exact scores (floats for display only)."""
    labels = sorted(scores)
    values = [float(Fraction(scores[x])) for x in labels]
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(labels)), 3.2))
    ax.bar(labels, values, color="#2c5f8a")
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_ylabel("score")
    ax.set_title(f"{rule_id} scores")
    for i, (lab, val) in enumerate(zip(labels, values)):
        ax.annotate(format_rational(scores[lab]), (i, val),
                    ha="center", va="bottom" if val >= 0 else "top", fontsize=9)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
