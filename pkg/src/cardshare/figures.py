"""Matplotlib rendering of safety reports and plane layouts.

Figures are written straight to files (Agg backend); the CLI emits them next
to the JSON/CSV outputs so a report directory is self-contained.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .eavesdropper import SafetyReport
from .errors import DimensionMismatch
from .geometry import Point
from .protocol import Assignment, Deal, SuitableParams, card_sort_key

__all__ = ["save_report_figure", "save_layout_figure"]

_MATCH = "#d9ead3"  # posterior equals prior
_DRIFT = "#f4cccc"  # posterior moved


def save_report_figure(report: SafetyReport, path, title: str = "posterior vs prior") -> None:
    """One row per card, one column per agent; drifted cells stand out."""
    agents = list(report.agents)
    cards = sorted(report.posteriors, key=card_sort_key)
    annotate = len(cards) <= 48
    fig_h = 0.9 + (0.28 if annotate else 0.06) * len(cards)
    fig, ax = plt.subplots(figsize=(1.2 + 1.1 * len(agents), fig_h))
    for i, card in enumerate(cards):
        for j, agent in enumerate(agents):
            prob = report.posteriors[card][agent]
            color = _MATCH if prob == report.priors[agent] else _DRIFT
            ax.add_patch(plt.Rectangle((j, i), 1, 1, facecolor=color, edgecolor="white"))
            if annotate:
                ax.text(j + 0.5, i + 0.5, str(prob), ha="center", va="center", fontsize=8)
    ax.set_xlim(0, len(agents))
    ax.set_ylim(0, len(cards))
    ax.invert_yaxis()
    ax.set_xticks([j + 0.5 for j in range(len(agents))])
    ax.set_xticklabels([f"{a} (prior {report.priors[a]})" for a in agents], fontsize=8)
    if annotate:
        ax.set_yticks([i + 0.5 for i in range(len(cards))])
        ax.set_yticklabels([str(c) for c in cards], fontsize=8)
    else:
        ax.set_yticks([])
        ax.set_ylabel(f"{len(cards)} cards")
    ax.set_title(f"{title}\nweakly_safe={report.weakly_safe}  perfectly_safe={report.perfectly_safe}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_layout_figure(
    f: Assignment,
    deal: Deal,
    params: SuitableParams,
    path,
    title: str = "card layout",
) -> None:
    """A d=1 plane as a colored grid: one cell per point, labeled with its card."""
    if params.d != 1:
        raise DimensionMismatch("layout figures only make sense on the plane (d=1)")
    q = params.q
    palette = plt.colormaps["tab10"]
    colors = {agent: palette(i) for i, agent in enumerate(params.agents)}
    fig, ax = plt.subplots(figsize=(1.0 * q + 1.2, 1.0 * q + 0.8))
    for x in range(q):
        for y in range(q):
            card = f.card_at(Point.of(params.field, x, y))
            agent = deal.holder_of(card)
            ax.add_patch(
                plt.Rectangle((x, y), 1, 1, facecolor=colors[agent], alpha=0.45, edgecolor="gray")
            )
            ax.text(x + 0.5, y + 0.6, str(agent), ha="center", va="center", fontsize=10)
            ax.text(x + 0.5, y + 0.25, f"card {card}", ha="center", va="center", fontsize=7)
    ax.set_xlim(0, q)
    ax.set_ylim(0, q)
    ax.set_xticks([x + 0.5 for x in range(q)])
    ax.set_xticklabels(range(q))
    ax.set_yticks([y + 0.5 for y in range(q)])
    ax.set_yticklabels(range(q))
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
