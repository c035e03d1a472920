"""Command-line interface.

Subcommands:
    params   print balanced parameter choices for a number of agents
    deal     deal a deck and write a deal file
    run      produce a full protocol run and write the transcript
    analyze  eavesdropper's report from a transcript alone
    verify   check a transcript against a deal file (validity + informativity)
    demo     replay the sixteen-card worked example

Exit codes: 0 success, 2 safety or verification check failed, 3 invalid
parameters, 4 malformed transcript or deal file.  CARDSHARE_SEED supplies a
default seed; --seed overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import demo as demo_mod
from . import transcript as wire
from .eavesdropper import SafetyReport, candidate_deal, probability_report
from .errors import CardshareError, InvalidParams, MalformedRun
from .geometry import Point, TransversalHyperplane
from .params import balanced_tau, prime_power_above
from .protocol import (
    VARIANTS,
    VARIANT_SHIFTED,
    VARIANT_UNSHIFTED,
    deal_random,
    is_valid_execution,
    reconstruct_deal,
    run_protocol,
    validate_suitable,
)
from .session import new_session, play

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_BAD_PARAMS = 3
EXIT_BAD_FILE = 4


def _default_seed():
    raw = os.environ.get("CARDSHARE_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        return raw


def _parse_tau(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InvalidParams(f"--tau must be comma-separated integers, got {text!r}") from exc


def _resolve_params(args):
    """Build SuitableParams from --agents/--q/--d/--tau (agents counts Alice)."""
    tau = _parse_tau(args.tau) if args.tau else None
    if args.agents is not None:
        m = args.agents - 1
    elif tau is not None:
        m = len(tau) - 1
    else:
        raise InvalidParams("give --agents (or --tau, which fixes the agent count)")
    q = args.q if args.q is not None else prime_power_above(m)
    if tau is None:
        tau, _ = balanced_tau(m, q, args.d)
    return validate_suitable(m, q, args.d, tau)


def _make_deck(params, path):
    if path is None:
        return list(range(params.tau.total))
    try:
        with open(path, encoding="utf-8") as fh:
            deck = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedRun(f"cannot read deck file {path}: {exc}") from exc
    if not isinstance(deck, list):
        raise MalformedRun(f"deck file {path} must hold a JSON array of card ids")
    return deck


def _format_report_table(report: SafetyReport) -> str:
    agents = list(report.agents)
    cards = sorted(report.posteriors)
    card_w = max(5, max(len(str(c)) for c in cards))
    col_w = [
        max(len(a), len(str(report.priors[a])),
            max(len(str(report.posteriors[c][a])) for c in cards))
        for a in agents
    ]
    lines = ["  ".join(["card".ljust(card_w)] + [a.ljust(w) for a, w in zip(agents, col_w)])]
    lines.append("  ".join(["prior".ljust(card_w)]
                           + [str(report.priors[a]).ljust(w) for a, w in zip(agents, col_w)]))
    for card in cards:
        row = [str(card).ljust(card_w)]
        row += [str(report.posteriors[card][a]).ljust(w) for a, w in zip(agents, col_w)]
        lines.append("  ".join(row))
    lines.append(f"weakly_safe={report.weakly_safe}  perfectly_safe={report.perfectly_safe}")
    return "\n".join(lines)


# --- subcommands ---------------------------------------------------------------


def cmd_params(args) -> int:
    m = args.agents - 1
    q = prime_power_above(m)
    d_values = [args.d] if args.d is not None else list(range(2, args.max_d + 1))
    rows = []
    for d in d_values:
        tau, cert = balanced_tau(m, q, d)
        rows.append({"tau": list(tau.sizes), "m": m, "q": q, "d": d,
                     "window": [cert.lower, cert.upper]})
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    tau_w = max(len(str(tuple(r["tau"]))) for r in rows)
    print(f"{'tau'.ljust(tau_w)}  m  q  d  hand-size window")
    for r in rows:
        print(f"{str(tuple(r['tau'])).ljust(tau_w)}  {r['m']}  {r['q']}  {r['d']}  "
              f"({r['window'][0]}, {r['window'][1]})")
    return EXIT_OK


def cmd_deal(args) -> int:
    params = _resolve_params(args)
    deck = _make_deck(params, args.deck)
    deal = deal_random(params, deck, random.Random(args.seed))
    wire.save_deal(args.out, deal, params.tau)
    print(f"dealt {params.tau.total} cards to {len(params.agents)} agents -> {args.out}")
    return EXIT_OK


def cmd_run(args) -> int:
    params = _resolve_params(args)
    if args.deal:
        _, deal = wire.load_deal(args.deal)
        run = run_protocol(deal, params, random.Random(args.seed), args.variant)
    else:
        session = play(new_session(params, _make_deck(params, args.deck), args.seed, args.variant))
        deal, run = session.deal, session.eve_view
    wire.save_transcript(args.out, params, run, args.variant)
    print(f"run complete: {len(run)} tokens ({args.variant}) -> {args.out}")
    if args.deal_out:
        wire.save_deal(args.deal_out, deal, params.tau)
        print(f"true deal -> {args.deal_out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    params, run, variant = wire.load_transcript(args.transcript)
    if args.variant:
        variant = args.variant
    report = probability_report(run, params, variant)
    print(_format_report_table(report))
    if args.report:
        wire.save_report(args.report, report)
        print(f"report -> {args.report}")
    if args.csv:
        wire.write_report_csv(args.csv, report)
        print(f"csv -> {args.csv}")
    if args.figure:
        from .figures import save_report_figure

        save_report_figure(report, args.figure, title=f"{variant} run")
        print(f"figure -> {args.figure}")
    return EXIT_OK if report.perfectly_safe else EXIT_CHECK_FAILED


def cmd_verify(args) -> int:
    params, run, variant = wire.load_transcript(args.transcript)
    tau, deal = wire.load_deal(args.deal)
    if tau.sizes != params.tau.sizes:
        print(f"FAIL distribution types differ: deal {tau.sizes} vs transcript {params.tau.sizes}")
        return EXIT_CHECK_FAILED
    verdict = is_valid_execution(deal, run, params, variant)
    if not verdict:
        print(f"FAIL execution invalid: {verdict.reason} ({verdict.detail})")
        return EXIT_CHECK_FAILED
    print("ok   transcript is a valid execution of the deal")
    for agent in params.agents:
        recovered = reconstruct_deal(agent, deal[agent], run, params, variant)
        if recovered != deal:
            print(f"FAIL {agent}'s reconstruction differs from the deal")
            return EXIT_CHECK_FAILED
    print(f"ok   all {len(params.agents)} reconstructions equal the deal")
    return EXIT_OK


def cmd_demo(args) -> int:
    params = demo_mod.worked_example_params()
    f = demo_mod.worked_example_assignment()
    deal = demo_mod.worked_example_deal()
    print("Sixteen cards on the plane over GF(4); the non-A cards sit on the diagonal:")
    print(demo_mod.layout_grid(f, deal, params, show_cards=True))

    run = demo_mod.worked_example_run()
    print("\nShifted announcements:")
    for agent, token in zip(params.agents[1:], run.projections):
        values = sorted(p.values()[0] for p in token.points)
        print(f"  {agent} announces {values}")
    report = probability_report(run, params)
    print("\nWhat the eavesdropper can compute (shifted run):")
    print(_format_report_table(report))

    alt = TransversalHyperplane(slope=Point.of(params.field, 2), intercept=params.field.zero)
    alt_deal = candidate_deal(run, alt, params).deal
    print("\nThe same transcript is equally consistent with slope 2 through the origin,")
    print("under which B1 would hold the card at (0,0):")
    print(demo_mod.layout_grid(f, alt_deal, params, show_cards=True))

    base_run = demo_mod.worked_example_run(VARIANT_UNSHIFTED)
    base_report = probability_report(base_run, params, VARIANT_UNSHIFTED)
    print("\nUnshifted baseline on the same deal:")
    print(_format_report_table(base_report))
    p0 = base_report.probability(0, "B1")
    print(f"\nThe baseline leaks: P(B1 holds card 0) = {p0} (prior was {base_report.priors['B1']}).")

    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        from .figures import save_layout_figure, save_report_figure

        wire.save_transcript(os.path.join(args.outdir, "transcript.json"), params, run)
        wire.save_report(os.path.join(args.outdir, "report.json"), report)
        wire.write_report_csv(os.path.join(args.outdir, "report.csv"), report)
        save_layout_figure(f, deal, params, os.path.join(args.outdir, "layout.png"),
                           title="true layout (diagonal)")
        save_layout_figure(f, alt_deal, params, os.path.join(args.outdir, "layout_alt.png"),
                           title="consistent alternative (slope 2)")
        save_report_figure(report, os.path.join(args.outdir, "report.png"), title="shifted run")
        save_report_figure(base_report, os.path.join(args.outdir, "report_unshifted.png"),
                           title="unshifted baseline")
        print(f"\nartifacts -> {args.outdir}/")

    if not report.perfectly_safe or base_report.perfectly_safe:
        print("demo sanity checks failed", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def _add_param_args(sub, need_d=True):
    sub.add_argument("--agents", type=int, help="total number of communicating agents (incl. A)")
    sub.add_argument("--q", type=int, help="field order (default: smallest prime power above m)")
    sub.add_argument("--d", type=int, required=need_d, help="dimension parameter")
    sub.add_argument("--tau", help="comma-separated hand sizes, Alice first (default: balanced)")
    sub.add_argument("--seed", type=int, default=_default_seed(),
                     help="RNG seed (default: CARDSHARE_SEED)")
    sub.add_argument("--deck", help="JSON file with card ids (default: 0..|tau|-1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cardshare", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("params", help="print balanced parameter choices")
    p.add_argument("--agents", type=int, required=True,
                   help="total number of communicating agents (incl. A)")
    p.add_argument("--d", type=int, help="single dimension parameter")
    p.add_argument("--max-d", type=int, default=5, help="table range when --d is omitted")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_params)

    p = subs.add_parser("deal", help="deal a deck and write a deal file")
    _add_param_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_deal)

    p = subs.add_parser("run", help="produce a full run and write the transcript")
    _add_param_args(p)
    p.add_argument("--variant", choices=VARIANTS, default=VARIANT_SHIFTED)
    p.add_argument("--deal", help="use the hands from this deal file")
    p.add_argument("--deal-out", help="also write the true deal here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = subs.add_parser("analyze", help="eavesdropper's report from a transcript")
    p.add_argument("transcript")
    p.add_argument("--report", help="write the report as JSON")
    p.add_argument("--csv", help="write the report as CSV")
    p.add_argument("--figure", help="render the report as a figure (png/pdf/svg)")
    p.add_argument("--variant", choices=VARIANTS,
                   help="override the variant recorded in the transcript")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("verify", help="check a transcript against a deal file")
    p.add_argument("transcript")
    p.add_argument("--deal", required=True)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("demo", help="replay the sixteen-card worked example")
    p.add_argument("--outdir", help="write transcript, reports and figures here")
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except MalformedRun as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except FileNotFoundError as exc:
        print(f"missing file: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except CardshareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
