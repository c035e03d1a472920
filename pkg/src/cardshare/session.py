"""In-process broadcast sessions tying the agents and the eavesdropper together.

The network is an append-only log of broadcast tokens.  Every agent sees the
log plus their own hand; the eavesdropper sees exactly the log.  That models
the adversary (a passive interceptor of all broadcasts) without any real
transport.  A session is mutated only through step(); analysis of a finished
session is pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .eavesdropper import SafetyReport, probability_report
from .errors import SessionComplete, SessionIncomplete
from .protocol import (
    ALICE,
    Deal,
    Run,
    SuitableParams,
    VARIANT_SHIFTED,
    VARIANT_UNSHIFTED,
    alice_token,
    bob_token,
    bob_token_unshifted,
    card_sort_key,
    deal_random,
    infer_hyperplane,
    reconstruct_deal,
)

__all__ = ["AgentState", "Session", "SessionResult", "new_session", "step", "play", "finish"]


@dataclass
class AgentState:
    """What one agent knows: their role, their hand, and the broadcast log."""

    role: str
    hand: frozenset
    log: list = field(default_factory=list)
    reconstruction: Deal | None = None


@dataclass
class Session:
    params: SuitableParams
    deck: tuple
    deal: Deal
    variant: str
    rng: random.Random
    log: list = field(default_factory=list)
    agents: dict = field(default_factory=dict)

    @property
    def is_complete(self) -> bool:
        return len(self.log) == self.params.m + 1

    @property
    def eve_view(self) -> Run:
        """The public transcript: everything the eavesdropper has."""
        return Run(tuple(self.log))


@dataclass
class SessionResult:
    reconstructions: dict
    report: SafetyReport


def new_session(
    params: SuitableParams,
    deck,
    seed=None,
    variant: str = VARIANT_SHIFTED,
) -> Session:
    """Deal a fresh session; identical seeds give identical sessions."""
    rng = random.Random(seed)
    deal = deal_random(params, deck, rng)
    session = Session(
        params=params,
        deck=tuple(sorted(deck, key=card_sort_key)),
        deal=deal,
        variant=variant,
        rng=rng,
    )
    session.agents = {a: AgentState(role=a, hand=deal[a]) for a in params.agents}
    return session


def step(session: Session) -> Session:
    """Broadcast the next agent's token to everyone."""
    if session.is_complete:
        raise SessionComplete("all announcements have been made")
    turn = len(session.log)
    if turn == 0:
        token = alice_token(session.deal[ALICE], session.deal.cards, session.params, session.rng)
    else:
        agent = session.params.agents[turn]
        f = session.log[0]
        hand = session.deal[agent]
        if session.variant == VARIANT_UNSHIFTED:
            token = bob_token_unshifted(f, hand)
        else:
            token = bob_token(f, infer_hyperplane(f, hand), hand)
    session.log.append(token)
    for state in session.agents.values():
        state.log.append(token)
    return session


def play(session: Session) -> Session:
    """Step the session to completion."""
    while not session.is_complete:
        step(session)
    return session


def finish(session: Session) -> SessionResult:
    """Reconstruct the deal for every agent and analyze what Eve learned.

    Each reconstruction uses only that agent's own hand plus the log; the
    report uses only the log.
    """
    if not session.is_complete:
        raise SessionIncomplete(f"run has {len(session.log)} of {session.params.m + 1} tokens")
    run = session.eve_view
    reconstructions = {}
    for agent, state in session.agents.items():
        state.reconstruction = reconstruct_deal(
            agent, state.hand, run, session.params, session.variant
        )
        reconstructions[agent] = state.reconstruction
    report = probability_report(run, session.params, session.variant)
    return SessionResult(reconstructions=reconstructions, report=report)
