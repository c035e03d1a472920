"""Exact analysis of what an intercepted transcript reveals.

The analyzer plays the eavesdropper: it consumes only the public data (the
parameters and the run — never a hand) and enumerates every deal consistent
with what was broadcast.  For either protocol variant each transversal
hyperplane V yields exactly one consistent deal: Alice holds the preimage of
V's complement, and each B_k holds the preimage of his announcement mapped
back onto V.  Posteriors are therefore counting ratios with denominator
q**(d+1), kept as exact ``fractions.Fraction`` values; safety verdicts are
equality claims, so no floating point is allowed near them.

A brute-force oracle cross-checks the hyperplane-indexed construction by
enumerating every deal of the right distribution type and filtering with the
protocol validator.  It exists to validate the fast path, not to analyze
production-sized decks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import MalformedRun, TooLarge
from .geometry import TransversalHyperplane, enumerate_transversal, space_point_set
from .protocol import (
    ALICE,
    Assignment,
    CardId,
    Deal,
    Run,
    SuitableParams,
    VARIANT_SHIFTED,
    VARIANT_UNSHIFTED,
    card_sort_key,
    is_valid_execution,
)

__all__ = [
    "CandidateDeal",
    "SafetyReport",
    "candidate_deal",
    "possible_deals",
    "brute_force_possible_deals",
    "probability_report",
    "check_weak_safety",
    "check_perfect_safety",
    "priors_for",
]

BRUTE_FORCE_GUARD = 10**7


@dataclass(frozen=True)
class CandidateDeal:
    """One deal the eavesdropper must consider, indexed by its hyperplane."""

    hyperplane: TransversalHyperplane
    deal: Deal


def _well_formed(run: Run, params: SuitableParams) -> Assignment:
    """Validate the public shape of a full run; raise MalformedRun otherwise."""
    if len(run) != params.m + 1:
        raise MalformedRun(f"expected {params.m + 1} tokens, got {len(run)}")
    f = run.assignment
    space = space_point_set(params.field, params.d + 1)
    if not f.is_bijection_onto(space):
        raise MalformedRun("assignment is not a bijection onto GF(q)^(d+1)")
    base = space_point_set(params.field, params.d)
    seen: set = set()
    for agent, size, token in zip(params.agents[1:], params.tau.sizes[1:], run.projections):
        if len(token.points) != size:
            raise MalformedRun(f"{agent} announced {len(token.points)} points, expected {size}")
        if not token.points <= base:
            raise MalformedRun(f"{agent}'s announcement is not a subset of GF(q)^d")
        if token.points & seen:
            raise MalformedRun(f"{agent}'s announcement overlaps an earlier one")
        seen |= token.points
    return f


def _candidate(f: Assignment, run: Run, plane, params, variant) -> CandidateDeal:
    on_plane = frozenset(plane.points())
    space = space_point_set(params.field, params.d + 1)
    hands = {ALICE: f.preimage(space - on_plane)}
    for agent, token in zip(params.agents[1:], run.projections):
        if variant == VARIANT_UNSHIFTED:
            lifted = {plane.lift(y) for y in token.points}
        else:
            lifted = {plane.shift_up(y) for y in token.points}
        hands[agent] = f.preimage(lifted)
    return CandidateDeal(hyperplane=plane, deal=Deal(hands))


def candidate_deal(
    run: Run,
    plane: TransversalHyperplane,
    params: SuitableParams,
    variant: str = VARIANT_SHIFTED,
) -> CandidateDeal:
    """The unique deal consistent with the run if Alice's complement were this plane."""
    f = _well_formed(run, params)
    return _candidate(f, run, plane, params, variant)


def possible_deals(
    run: Run,
    params: SuitableParams,
    variant: str = VARIANT_SHIFTED,
) -> tuple[CandidateDeal, ...]:
    """Every deal the eavesdropper considers possible: one per hyperplane."""
    f = _well_formed(run, params)
    return tuple(
        _candidate(f, run, plane, params, variant)
        for plane in enumerate_transversal(params.field, params.d)
    )


def _deal_count(n: int, sizes) -> int:
    total = 1
    remaining = n
    for s in sizes:
        total *= math.comb(remaining, s)
        remaining -= s
    return total


def _all_deals(cards: tuple, agents, sizes):
    if not agents:
        yield {}
        return
    for combo in combinations(cards, sizes[0]):
        picked = set(combo)
        rest = tuple(c for c in cards if c not in picked)
        for tail in _all_deals(rest, agents[1:], sizes[1:]):
            tail[agents[0]] = combo
            yield tail


def brute_force_possible_deals(
    run: Run,
    params: SuitableParams,
    deck: Iterable[CardId],
    variant: str = VARIANT_SHIFTED,
    guard: int = BRUTE_FORCE_GUARD,
) -> set[Deal]:
    """Oracle: enumerate every deal of type tau and keep the valid executions.

    Independent of the hyperplane-indexed construction above; guarded because
    the multinomial count grows fast.
    """
    _well_formed(run, params)
    cards = tuple(sorted(deck, key=card_sort_key))
    count = _deal_count(len(cards), params.tau.sizes)
    if count > guard:
        raise TooLarge(f"{count} deals of this type; guard is {guard}")
    out = set()
    for hands in _all_deals(cards, params.agents, params.tau.sizes):
        deal = Deal(hands)
        if is_valid_execution(deal, run, params, variant):
            out.add(deal)
    return out


@dataclass(frozen=True)
class SafetyReport:
    """Exact posterior P(agent holds card | run) for every card-agent pair."""

    priors: dict
    posteriors: dict
    weakly_safe: bool
    perfectly_safe: bool

    def probability(self, card: CardId, agent: str) -> Fraction:
        return self.posteriors[card][agent]

    @property
    def cards(self) -> tuple:
        return tuple(self.posteriors)

    @property
    def agents(self) -> tuple:
        return tuple(self.priors)


def priors_for(params: SuitableParams) -> dict:
    """Dealing-phase probabilities: hand size over deck size, per agent."""
    total = params.tau.total
    return {a: Fraction(s, total) for a, s in zip(params.agents, params.tau.sizes)}


def probability_report(
    run: Run,
    params: SuitableParams,
    variant: str = VARIANT_SHIFTED,
) -> SafetyReport:
    """Count, over all possible deals, how often each agent holds each card."""
    candidates = possible_deals(run, params, variant)
    n = len(candidates)
    deck = sorted(run.assignment.cards, key=card_sort_key)
    counts = {card: {agent: 0 for agent in params.agents} for card in deck}
    for cand in candidates:
        for agent, hand in cand.deal.items():
            for card in hand:
                counts[card][agent] += 1
    posteriors = {
        card: {agent: Fraction(c, n) for agent, c in by_agent.items()}
        for card, by_agent in counts.items()
    }
    priors = priors_for(params)
    return SafetyReport(
        priors=priors,
        posteriors=posteriors,
        weakly_safe=_weakly_safe(posteriors),
        perfectly_safe=_perfectly_safe(posteriors, priors),
    )


def _weakly_safe(posteriors: dict) -> bool:
    return all(
        sum(1 for p in by_agent.values() if p > 0) >= 2 for by_agent in posteriors.values()
    )


def _perfectly_safe(posteriors: dict, priors: dict) -> bool:
    return all(
        by_agent[agent] == prior
        for by_agent in posteriors.values()
        for agent, prior in priors.items()
    )


def check_weak_safety(report: SafetyReport) -> bool:
    """No card's holder is certain: every card has at least two possible holders."""
    return _weakly_safe(report.posteriors)


def check_perfect_safety(report: SafetyReport, params: SuitableParams) -> bool:
    """The transcript moved no probability: every posterior equals its prior."""
    return _perfectly_safe(report.posteriors, priors_for(params))
