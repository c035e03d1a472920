"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``) and
holds exact rational equalities at zero tolerance; runtime budgets are
asserted where stated.  Run with::

    pytest tests/test_acceptance.py -v -s
"""

import random
import time
from fractions import Fraction

from cardshare import (
    balanced_tau,
    brute_force_possible_deals,
    construct_field,
    deal_random,
    demo,
    new_session,
    parameter_table,
    play,
    possible_deals,
    prime_power_above,
    probability_report,
    reconstruct_deal,
    run_protocol,
    validate_suitable,
)
from cardshare.geometry import (
    enumerate_transversal,
    space_points,
    through_point,
)
from cardshare.protocol import VARIANT_UNSHIFTED, Run, bob_token

WORKED = validate_suitable(2, 4, 1, (12, 2, 2))
SCALE_PARAMS = [
    validate_suitable(2, 3, 2, (18, 4, 5)),
    validate_suitable(3, 4, 2, (48, 5, 5, 6)),
]


class _Criterion:
    def __init__(self, name, budget=None):
        self.name, self.budget = name, budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.name}: {status} ({elapsed:.2f}s)")
        if exc_type is None and self.budget is not None:
            assert elapsed < self.budget, f"{self.name}: {elapsed:.2f}s over the {self.budget}s budget"
        return False


def _fixture_runs_over_all_hyperplanes():
    """One full run per hyperplane, all sharing the pinned assignment."""
    f = demo.worked_example_assignment()
    runs = []
    for plane in enumerate_transversal(WORKED.field, 1):
        on = [f.card_at(pt) for pt in plane.points()]
        b1, b2 = frozenset(on[:2]), frozenset(on[2:])
        runs.append(Run((f, bob_token(f, plane, b1), bob_token(f, plane, b2))))
    return runs


def test_criterion_1_worked_example_posteriors():
    priors = {"A": Fraction(12, 16), "B1": Fraction(2, 16), "B2": Fraction(2, 16)}
    with _Criterion("1 worked-example posteriors", budget=1.0):
        runs = _fixture_runs_over_all_hyperplanes()
        assert len(runs) == 16
        for seed in range(100):
            session = play(new_session(WORKED, range(16), seed=seed))
            runs.append(session.eve_view)
        for run in runs:
            report = probability_report(run, WORKED)
            for card in range(16):
                for agent, prior in priors.items():
                    assert report.probability(card, agent) == prior
            assert report.perfectly_safe


def test_criterion_2_unshifted_baseline_discrimination():
    with _Criterion("2 unshifted baseline discrimination"):
        run = demo.worked_example_run(VARIANT_UNSHIFTED)
        report = probability_report(run, WORKED, VARIANT_UNSHIFTED)
        assert report.probability(0, "B1") == 0  # card 0 sits at the origin
        assert report.perfectly_safe is False
        assert report.weakly_safe is True


def test_criterion_3_oracle_equivalence():
    with _Criterion("3 brute-force oracle equivalence", budget=10.0):
        deck = range(16)
        for seed in range(20):
            rng = random.Random(seed)
            deal = deal_random(WORKED, deck, rng)
            run = run_protocol(deal, WORKED, rng)
            fast = {cand.deal for cand in possible_deals(run, WORKED)}
            slow = brute_force_possible_deals(run, WORKED, deck)
            assert fast == slow
            assert len(slow) == 16


def test_criterion_4_perfect_safety_at_scale():
    with _Criterion("4 perfect safety at scale", budget=30.0):
        for params in SCALE_PARAMS:
            priors = {a: Fraction(s, params.tau.total)
                      for a, s in zip(params.agents, params.tau.sizes)}
            deck = range(params.tau.total)
            for seed in range(100):
                session = play(new_session(params, deck, seed=seed))
                report = probability_report(session.eve_view, params)
                assert all(
                    by_agent[agent] == prior
                    for by_agent in report.posteriors.values()
                    for agent, prior in priors.items()
                )


def test_criterion_5_informativity():
    with _Criterion("5 informativity of every session"):
        session_sets = [(WORKED, range(16))] + [(p, range(p.tau.total)) for p in SCALE_PARAMS]
        for params, deck in session_sets:
            for seed in range(100):
                session = play(new_session(params, deck, seed=seed))
                run = session.eve_view
                for agent in params.agents:
                    rec = reconstruct_deal(agent, session.deal[agent], run, params)
                    assert rec == session.deal


def test_criterion_6_counting_lemmas():
    with _Criterion("6 hyperplane counting and inverse maps"):
        for q in (2, 3, 4, 5):
            field = construct_field(q)
            for d in (1, 2, 3):
                planes = enumerate_transversal(field, d)
                assert len(planes) == q ** (d + 1)
                assert len(set(planes)) == len(planes)
                base = set(space_points(field, d))
                for x in space_points(field, d + 1):
                    through = through_point(x)
                    assert len(through) == q**d
                    assert all(v.contains(x) for v in through)
                    assert {v.slope for v in through} == base  # slope restricted is a bijection
                for plane in planes:
                    for y in space_points(field, d):
                        assert plane.shift_down(plane.shift_up(y)) == y
                    for w in plane.points():
                        assert plane.shift_up(plane.shift_down(w)) == w


def test_criterion_7_parameter_table():
    pinned = [
        ((18, 4, 5), 2, 3, 2),
        ((54, 13, 14), 2, 3, 3),
        ((162, 40, 41), 2, 3, 4),
        ((486, 121, 122), 2, 3, 5),
        ((48, 5, 5, 6), 3, 4, 2),
        ((192, 21, 21, 22), 3, 4, 3),
        ((100, 6, 6, 6, 7), 4, 5, 2),
        ((500, 31, 31, 31, 32), 4, 5, 3),
    ]
    with _Criterion("7 balanced parameter table"):
        rows = parameter_table(4, 5)
        produced = {(r.tau.sizes, r.m, r.q, r.d) for r in rows}
        for tau, m, q, d in pinned:
            assert (tau, m, q, d) in produced
            assert prime_power_above(m) == q
            params = validate_suitable(m, q, d, tau)
            assert params.tau.sizes == tau
            regenerated, cert = balanced_tau(m, q, d)
            assert regenerated.sizes == tau
            a = q ** (d - 1)
            assert cert.a == a and cert.upper == 4 * m * m * a
            assert all(a < size < 4 * m * m * a for size in tau)


def test_criterion_8_field_axioms():
    import itertools

    with _Criterion("8 field axioms and Frobenius", budget=5.0):
        for q in (2, 3, 4, 5, 7, 8, 9):
            field = construct_field(q)
            elems = field.elements()
            zero, one = field.zero, field.one
            for x in elems:
                assert x + zero == x and x * one == x
                assert x + (-x) == zero
                assert x**q == x
                if x.value:
                    assert x * x.inverse() == one
            for x, y, z in itertools.product(elems, repeat=3):
                assert x + y == y + x and x * y == y * x
                assert (x + y) + z == x + (y + z)
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z
