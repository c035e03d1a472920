"""The shifted-projection announcement protocol.

One agent (A, "Alice") holds all cards except for q**d of them; the other m
agents ("B1".."Bm") share the rest.  Alice broadcasts an assignment of every
card to a point of GF(q)^(d+1) chosen so that the cards she does NOT hold
land exactly on a transversal hyperplane V.  Each other agent holds enough
cards to pin V down (strictly more than q**(d-1), the largest possible
overlap of two distinct hyperplanes), hence learns Alice's hand; they then
take turns announcing the shifted projection of their own points,

    X_k = { project(f(c)) + slope(V) : c in hand of B_k }.

Everyone can invert the announcements (shift_up along V) and recover the
full deal, while the broadcast never pins down V for an outside observer:
every transversal hyperplane remains consistent with the transcript.

The module also implements the unshifted baseline variant, where agents
announce plain projections.  It leaks: an observer learns that B_k's cards
all project into X_k.  The two variants share every code path except the
announcement map; the eavesdropper analyzer quantifies the difference.

Randomized operations take an explicit ``random.Random`` so runs are
reproducible from a seed; nothing here touches global randomness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import (
    Ambiguous,
    AliceSizeWrong,
    BobTooSmall,
    DeckSizeMismatch,
    HandNotOnHyperplane,
    HandSizeWrong,
    InconsistentRun,
    InvalidParams,
    MalformedRun,
    NoneContains,
    QNotAboveM,
    TooFewAgents,
    TotalSizeWrong,
)
from .fields import FieldSpec, construct_field
from .geometry import (
    Point,
    TransversalHyperplane,
    enumerate_transversal,
    project,
    space_point_set,
    space_points,
    unique_hyperplane_containing,
)

__all__ = [
    "CardId",
    "DistributionType",
    "SuitableParams",
    "Deal",
    "Assignment",
    "Projection",
    "Run",
    "ValidationResult",
    "VARIANT_SHIFTED",
    "VARIANT_UNSHIFTED",
    "agent_names",
    "validate_suitable",
    "deal_random",
    "alice_token",
    "infer_hyperplane",
    "bob_token",
    "bob_token_unshifted",
    "run_protocol",
    "is_valid_execution",
    "reconstruct_deal",
]

CardId = int | str

VARIANT_SHIFTED = "shifted"
VARIANT_UNSHIFTED = "unshifted"
VARIANTS = (VARIANT_SHIFTED, VARIANT_UNSHIFTED)

ALICE = "A"


@lru_cache(maxsize=None)
def agent_names(m: int) -> tuple[str, ...]:
    """Canonical agent order: A, B1, ..., Bm."""
    return (ALICE,) + tuple(f"B{k}" for k in range(1, m + 1))


def card_sort_key(card: CardId):
    """Deterministic order for decks mixing integer and string ids."""
    return (1, str(card)) if isinstance(card, str) else (0, card)


@dataclass(frozen=True)
class DistributionType:
    """Hand sizes in agent order (Alice first)."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if len(self.sizes) < 2:
            raise InvalidParams("a distribution type needs Alice and at least one other agent")
        if any(s < 1 for s in self.sizes):
            raise InvalidParams(f"hand sizes must be positive, got {self.sizes}")

    @property
    def m(self) -> int:
        return len(self.sizes) - 1

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def agents(self) -> tuple[str, ...]:
        return agent_names(self.m)

    def size_of(self, agent: str) -> int:
        return self.sizes[self.agents.index(agent)]


@dataclass(frozen=True)
class SuitableParams:
    """Validated parameter bundle; build through validate_suitable()."""

    m: int
    q: int
    d: int
    tau: DistributionType
    field: FieldSpec

    @property
    def agents(self) -> tuple[str, ...]:
        return self.tau.agents

    @property
    def space_size(self) -> int:
        return self.q ** (self.d + 1)


def validate_suitable(m: int, q: int, d: int, tau) -> SuitableParams:
    """Check every suitability constraint, naming the first one violated.

    Suitable means: m > 1, q a prime power above m, d > 0, deck size
    q**(d+1), Alice holding q**(d+1) - q**d cards, and every other hand
    strictly larger than q**(d-1).
    """
    if not isinstance(tau, DistributionType):
        tau = DistributionType(tuple(tau))
    if m < 2:
        raise TooFewAgents(f"need at least two non-Alice agents, got m={m}")
    if d < 1:
        raise InvalidParams(f"dimension parameter must be positive, got d={d}")
    field = construct_field(q)  # raises NotAPrimePower
    if q <= m:
        raise QNotAboveM(f"field order must exceed m: got q={q}, m={m}")
    if tau.m != m:
        raise InvalidParams(f"distribution type has {tau.m} non-Alice hands, expected {m}")
    space = q ** (d + 1)
    if tau.total != space:
        raise TotalSizeWrong(f"hand sizes sum to {tau.total}, deck must have q**(d+1) = {space}")
    alice = space - q**d
    if tau.sizes[0] != alice:
        raise AliceSizeWrong(f"Alice must hold q**(d+1) - q**d = {alice} cards, got {tau.sizes[0]}")
    floor = q ** (d - 1)
    for agent, size in zip(tau.agents[1:], tau.sizes[1:]):
        if size <= floor:
            raise BobTooSmall(
                f"{agent} holds {size} cards but needs strictly more than q**(d-1) = {floor}"
            )
    return SuitableParams(m=m, q=q, d=d, tau=tau, field=field)


class Deal:
    """A partition of the deck into named hands."""

    __slots__ = ("_hands",)

    def __init__(self, hands: Mapping[str, Iterable[CardId]]):
        built: dict[str, frozenset] = {}
        seen: set = set()
        for agent, cards in hands.items():
            hand = frozenset(cards)
            if hand & seen:
                raise ValueError(f"hand of {agent} overlaps another hand")
            built[agent] = hand
            seen |= hand
        self._hands = built

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(self._hands)

    @property
    def cards(self) -> frozenset:
        return frozenset().union(*self._hands.values())

    def __getitem__(self, agent: str) -> frozenset:
        return self._hands[agent]

    def items(self):
        return self._hands.items()

    def holder_of(self, card: CardId) -> str:
        for agent, hand in self._hands.items():
            if card in hand:
                return agent
        raise KeyError(card)

    def matches(self, tau: DistributionType) -> bool:
        if set(self._hands) != set(tau.agents):
            return False
        return all(len(self._hands[a]) == s for a, s in zip(tau.agents, tau.sizes))

    def __eq__(self, other):
        if not isinstance(other, Deal):
            return NotImplemented
        return self._hands == other._hands

    def __hash__(self):
        return hash(frozenset(self._hands.items()))

    def __repr__(self):
        inner = ", ".join(f"{a}:{len(h)}" for a, h in self._hands.items())
        return f"Deal({inner})"


class Assignment:
    """Alice's token: a placement of every card on GF(q)^(d+1).

    Stored permissively (any card -> point map); bijectivity is a validation
    concern, so that runs loaded from untrusted transcripts can still be
    represented and then rejected with a reason code.
    """

    __slots__ = ("_map", "_points", "_cards", "_inverse")

    def __init__(self, mapping: Mapping[CardId, Point]):
        self._map = dict(mapping)
        self._points = frozenset(self._map.values())
        self._cards = frozenset(self._map)
        self._inverse = None

    @property
    def cards(self) -> frozenset:
        return self._cards

    @property
    def points(self) -> frozenset:
        return self._points

    def __getitem__(self, card: CardId) -> Point:
        return self._map[card]

    def __len__(self):
        return len(self._map)

    def items(self):
        return self._map.items()

    def image(self, cards: Iterable[CardId]) -> set[Point]:
        return {self._map[c] for c in cards}

    def is_bijection_onto(self, points: frozenset) -> bool:
        return len(self._map) == len(self._points) and self._points == points

    def card_at(self, point: Point) -> CardId:
        if self._inverse is None:
            if len(self._points) != len(self._map):
                raise MalformedRun("assignment is not injective; no inverse")
            self._inverse = {pt: c for c, pt in self._map.items()}
        return self._inverse[point]

    def preimage(self, points: Iterable[Point]) -> frozenset:
        return frozenset(self.card_at(pt) for pt in points)

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._map == other._map

    def __repr__(self):
        return f"Assignment({len(self._map)} cards)"


@dataclass(frozen=True)
class Projection:
    """One agent's announcement: a set of points of GF(q)^d."""

    points: frozenset

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True, eq=True)
class Run:
    """The public transcript: an assignment followed by projections."""

    tokens: tuple

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.tokens and not isinstance(self.tokens[0], Assignment):
            raise MalformedRun("the first token of a run must be an assignment")
        for t in self.tokens[1:]:
            if not isinstance(t, Projection):
                raise MalformedRun("every token after the first must be a projection")

    @property
    def assignment(self) -> Assignment | None:
        return self.tokens[0] if self.tokens else None

    @property
    def projections(self) -> tuple[Projection, ...]:
        return self.tokens[1:]

    def __len__(self):
        return len(self.tokens)


# --- token generation --------------------------------------------------------


def deal_random(params: SuitableParams, deck: Iterable[CardId], rng: random.Random) -> Deal:
    """Deal the deck uniformly at random with the hand sizes of params.tau."""
    cards = sorted(deck, key=card_sort_key)
    if len(cards) != params.tau.total:
        raise DeckSizeMismatch(f"deck has {len(cards)} cards, distribution needs {params.tau.total}")
    if len(set(cards)) != len(cards):
        raise DeckSizeMismatch("deck contains duplicate card ids")
    rng.shuffle(cards)
    hands = {}
    at = 0
    for agent, size in zip(params.agents, params.tau.sizes):
        hands[agent] = cards[at : at + size]
        at += size
    return Deal(hands)


def alice_token(
    hand: Iterable[CardId],
    deck: Iterable[CardId],
    params: SuitableParams,
    rng: random.Random,
) -> Assignment:
    """Draw Alice's assignment uniformly among the valid ones.

    Every valid assignment determines exactly one hyperplane (the complement
    of Alice's image), so sampling factors cleanly: pick the hyperplane
    uniformly among all q**(d+1), then a uniform bijection from Alice's hand
    onto its complement and another from the remaining cards onto it.
    """
    hand = frozenset(hand)
    deck = frozenset(deck)
    if len(deck) != params.space_size:
        raise DeckSizeMismatch(f"deck has {len(deck)} cards, expected {params.space_size}")
    if len(hand) != params.tau.sizes[0] or not hand <= deck:
        raise HandSizeWrong(
            f"Alice's hand must be {params.tau.sizes[0]} cards drawn from the deck"
        )
    planes = enumerate_transversal(params.field, params.d)
    plane = planes[rng.randrange(len(planes))]
    on_points = list(plane.points())
    on_set = set(on_points)
    off_points = [x for x in space_points(params.field, params.d + 1) if x not in on_set]

    alice_cards = sorted(hand, key=card_sort_key)
    other_cards = sorted(deck - hand, key=card_sort_key)
    rng.shuffle(alice_cards)
    rng.shuffle(other_cards)
    mapping = dict(zip(alice_cards, off_points))
    mapping.update(zip(other_cards, on_points))
    return Assignment(mapping)


def infer_hyperplane(f: Assignment, hand: Iterable[CardId]) -> TransversalHyperplane:
    """The unique transversal hyperplane through the hand's assigned points.

    Uniqueness needs more than q**(d-1) points; with fewer the geometry may
    report Ambiguous.
    """
    return unique_hyperplane_containing(f.image(hand))


def bob_token(f: Assignment, plane: TransversalHyperplane, hand: Iterable[CardId]) -> Projection:
    """Announce the shifted projection of the hand's points along the plane."""
    pts = f.image(hand)
    if not all(plane.contains(pt) for pt in pts):
        raise HandNotOnHyperplane("the hand's assigned points are not all on the hyperplane")
    return Projection(frozenset(plane.shift_down(pt) for pt in pts))


def bob_token_unshifted(f: Assignment, hand: Iterable[CardId]) -> Projection:
    """Baseline variant: announce plain projections (leaks; see analyzer)."""
    return Projection(frozenset(project(pt) for pt in f.image(hand)))


def _announce(f, plane, hand, variant) -> Projection:
    if variant == VARIANT_UNSHIFTED:
        return bob_token_unshifted(f, hand)
    return bob_token(f, plane, hand)


def run_protocol(
    deal: Deal,
    params: SuitableParams,
    rng: random.Random,
    variant: str = VARIANT_SHIFTED,
) -> Run:
    """Produce a full run: Alice's assignment, then every B_k's projection."""
    _check_variant(variant)
    if not deal.matches(params.tau):
        raise HandSizeWrong("deal does not have the distribution type of params")
    deck = deal.cards
    f = alice_token(deal[ALICE], deck, params, rng)
    tokens: list = [f]
    for agent in params.agents[1:]:
        if variant == VARIANT_UNSHIFTED:
            tokens.append(bob_token_unshifted(f, deal[agent]))
        else:
            tokens.append(bob_token(f, infer_hyperplane(f, deal[agent]), deal[agent]))
    return Run(tuple(tokens))


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise InvalidParams(f"unknown protocol variant {variant!r}; expected one of {VARIANTS}")


# --- validation ---------------------------------------------------------------

WRONG_LENGTH = "WrongLength"
WRONG_DISTRIBUTION = "WrongDistribution"
NOT_BIJECTION = "NotBijection"
COMPLEMENT_NOT_TRANSVERSAL = "ComplementNotTransversal"
WRONG_PROJECTION = "WrongProjection"


@dataclass(frozen=True)
class ValidationResult:
    """Truthy iff valid; otherwise carries a machine-readable reason code."""

    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_valid_execution(
    deal: Deal,
    run: Run,
    params: SuitableParams,
    variant: str = VARIANT_SHIFTED,
) -> ValidationResult:
    """Check that every token of the run is legal for the deal at its position.

    Accepts prefixes of full runs; the empty run is valid for every deal.
    """
    _check_variant(variant)
    if len(run) > params.m + 1:
        return ValidationResult(False, WRONG_LENGTH, f"{len(run)} tokens for m={params.m}")
    if not deal.matches(params.tau):
        return ValidationResult(False, WRONG_DISTRIBUTION, "hand sizes differ from tau")
    if not run.tokens:
        return ValidationResult(True)

    f = run.assignment
    space = space_point_set(params.field, params.d + 1)
    if f.cards != deal.cards or not f.is_bijection_onto(space):
        return ValidationResult(False, NOT_BIJECTION, "assignment is not a deck-to-space bijection")
    complement = space - f.image(deal[ALICE])
    try:
        plane = unique_hyperplane_containing(complement)
    except (NoneContains, Ambiguous):
        return ValidationResult(
            False, COMPLEMENT_NOT_TRANSVERSAL, "Alice's complement is not a transversal hyperplane"
        )

    for agent, token in zip(params.agents[1:], run.projections):
        try:
            expected = _announce(f, plane, deal[agent], variant)
        except HandNotOnHyperplane:
            return ValidationResult(False, WRONG_PROJECTION, f"{agent}'s hand is off the hyperplane")
        if expected.points != token.points:
            return ValidationResult(False, WRONG_PROJECTION, f"{agent}'s projection differs")
    return ValidationResult(True)


# --- reconstruction -----------------------------------------------------------


def reconstruct_deal(
    agent: str,
    own_hand: Iterable[CardId],
    run: Run,
    params: SuitableParams,
    variant: str = VARIANT_SHIFTED,
) -> Deal:
    """Recover the full deal from one agent's hand plus the public transcript.

    Alice recovers the hyperplane as the complement of her own image; each
    B_k recovers it from his own points.  Every hand then follows by
    inverting the announcements along it.
    """
    _check_variant(variant)
    if len(run) != params.m + 1:
        raise InconsistentRun(f"need a complete run of {params.m + 1} tokens, got {len(run)}")
    if agent not in params.agents:
        raise InconsistentRun(f"unknown agent {agent!r}")
    own_hand = frozenset(own_hand)
    f = run.assignment
    space = space_point_set(params.field, params.d + 1)
    if not f.is_bijection_onto(space):
        raise InconsistentRun("assignment is not a bijection onto the space")

    try:
        if agent == ALICE:
            plane = unique_hyperplane_containing(space - f.image(own_hand))
        else:
            plane = infer_hyperplane(f, own_hand)
    except (Ambiguous, NoneContains, KeyError) as exc:
        raise InconsistentRun(f"cannot locate the hyperplane from {agent}'s hand") from exc

    on_plane = frozenset(plane.points())
    hands: dict[str, frozenset] = {ALICE: f.preimage(space - on_plane)}
    for bob, token in zip(params.agents[1:], run.projections):
        if variant == VARIANT_UNSHIFTED:
            points = {plane.lift(y) for y in token.points}
        else:
            points = {plane.shift_up(y) for y in token.points}
        hands[bob] = f.preimage(points)

    try:
        deal = Deal(hands)
    except ValueError as exc:
        raise InconsistentRun("announcements overlap; no deal fits the transcript") from exc
    if deal[agent] != own_hand:
        raise InconsistentRun(f"{agent}'s hand is inconsistent with the transcript")
    if not deal.matches(params.tau):
        raise InconsistentRun("reconstructed hands do not fit the distribution type")
    return deal
