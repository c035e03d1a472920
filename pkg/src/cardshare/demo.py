"""The sixteen-card worked example over GF(4), pinned as a fixture.

Deck 0..15, with card i placed at (x, y) = (i % 4, i // 4).  The four cards
on the diagonal y = x are exactly the ones Alice does not hold: B1 has the
cards at (1,1) and (3,3), B2 those at (0,0) and (2,2), Alice the other
twelve.  With this layout the shifted announcements come out to {0, 2} for
B1 and {1, 3} for B2, while the unshifted baseline would announce {1, 3}
and {0, 2} — the pair of runs the analyzer uses to demonstrate perfect
versus merely weak safety.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .geometry import Point, TransversalHyperplane
from .protocol import (
    ALICE,
    Assignment,
    Deal,
    Run,
    SuitableParams,
    VARIANT_SHIFTED,
    VARIANT_UNSHIFTED,
    bob_token,
    bob_token_unshifted,
    validate_suitable,
)

__all__ = [
    "worked_example_params",
    "worked_example_deck",
    "worked_example_assignment",
    "worked_example_deal",
    "worked_example_plane",
    "worked_example_run",
    "layout_grid",
]


def worked_example_params() -> SuitableParams:
    return validate_suitable(m=2, q=4, d=1, tau=(12, 2, 2))


def worked_example_deck() -> tuple[int, ...]:
    return tuple(range(16))


def worked_example_assignment() -> Assignment:
    field = worked_example_params().field
    return Assignment({i: Point.of(field, i % 4, i // 4) for i in range(16)})


def worked_example_plane() -> TransversalHyperplane:
    """The diagonal y = x."""
    field = worked_example_params().field
    return TransversalHyperplane(slope=Point.of(field, 1), intercept=field.zero)


def worked_example_deal() -> Deal:
    diagonal = {0, 5, 10, 15}  # cards at (t, t)
    return Deal(
        {
            ALICE: frozenset(range(16)) - diagonal,
            "B1": {5, 15},
            "B2": {0, 10},
        }
    )


def worked_example_run(variant: str = VARIANT_SHIFTED) -> Run:
    f = worked_example_assignment()
    plane = worked_example_plane()
    deal = worked_example_deal()
    if variant == VARIANT_UNSHIFTED:
        tokens = (f, bob_token_unshifted(f, deal["B1"]), bob_token_unshifted(f, deal["B2"]))
    else:
        tokens = (f, bob_token(f, plane, deal["B1"]), bob_token(f, plane, deal["B2"]))
    return Run(tokens)


def layout_grid(f: Assignment, deal: Deal, params: SuitableParams, show_cards: bool = False) -> str:
    """Render a d=1 layout as a text grid, highest y first.

    Each cell names the holder of the card placed there; with show_cards the
    card id is appended.
    """
    if params.d != 1:
        raise DimensionMismatch("text grids only make sense on the plane (d=1)")
    field = params.field
    q = params.q
    cells = {}
    width = 0
    for y in range(q):
        for x in range(q):
            card = f.card_at(Point.of(field, x, y))
            label = deal.holder_of(card)
            if show_cards:
                label = f"{label}:{card}"
            cells[(x, y)] = label
            width = max(width, len(label))
    lines = []
    for y in range(q - 1, -1, -1):
        row = "  ".join(cells[(x, y)].ljust(width) for x in range(q))
        lines.append(f" y={y} | {row}")
    lines.append(f"     +-{'-' * ((width + 2) * q - 2)}")
    lines.append("   x =  " + "  ".join(str(x).ljust(width) for x in range(q)))
    return "\n".join(lines)
