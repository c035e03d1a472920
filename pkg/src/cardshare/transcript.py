"""File formats: transcripts, deal files, and safety reports.

All formats are JSON with sorted keys and canonical internal ordering, so
equal objects serialize to identical bytes:

transcript
    {"params": {"m", "q", "d", "tau"}, "variant": "shifted"|"unshifted",
     "tokens": [{"type": "assignment", "map": [[card, [coords...]], ...]},
                {"type": "projection", "points": [[coords...], ...]}, ...]}
    The assignment map is sorted by card id, projection points
    lexicographically by canonical coordinate values.  Transcripts carry no
    hands: they are exactly the eavesdropper's view.

deal file
    {"tau": [sizes...], "hands": {agent: [card ids...], ...}}

report file
    {"priors": {agent: [num, den]}, "cells": [{"card", "agent", "num",
     "den"}, ...], "weakly_safe": bool, "perfectly_safe": bool}
    with probabilities as reduced integer pairs.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import Any

from .eavesdropper import SafetyReport
from .errors import MalformedRun
from .protocol import (
    Assignment,
    DistributionType,
    Deal,
    Projection,
    Run,
    SuitableParams,
    VARIANTS,
    VARIANT_SHIFTED,
    card_sort_key,
    validate_suitable,
)
from .geometry import Point

__all__ = [
    "transcript_to_dict",
    "save_transcript",
    "load_transcript",
    "parse_transcript",
    "deal_to_dict",
    "save_deal",
    "load_deal",
    "report_to_dict",
    "report_json_bytes",
    "save_report",
    "write_report_csv",
]


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _point_values(point: Point) -> list[int]:
    return list(point.values())


# --- transcripts --------------------------------------------------------------


def transcript_to_dict(params: SuitableParams, run: Run, variant: str = VARIANT_SHIFTED) -> dict:
    tokens: list[dict[str, Any]] = []
    for token in run.tokens:
        if isinstance(token, Assignment):
            entries = sorted(token.items(), key=lambda cp: card_sort_key(cp[0]))
            tokens.append(
                {"type": "assignment", "map": [[c, _point_values(p)] for c, p in entries]}
            )
        else:
            pts = sorted(token.points, key=lambda p: p.values())
            tokens.append({"type": "projection", "points": [_point_values(p) for p in pts]})
    return {
        "params": {"m": params.m, "q": params.q, "d": params.d, "tau": list(params.tau.sizes)},
        "variant": variant,
        "tokens": tokens,
    }


def save_transcript(path, params: SuitableParams, run: Run, variant: str = VARIANT_SHIFTED):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dump(transcript_to_dict(params, run, variant)))


def _decode_card(raw) -> Any:
    if not isinstance(raw, (int, str)) or isinstance(raw, bool):
        raise MalformedRun(f"card ids must be integers or strings, got {raw!r}")
    return raw


def _decode_point(raw, params: SuitableParams, dim: int) -> Point:
    if not isinstance(raw, list) or len(raw) != dim:
        raise MalformedRun(f"expected {dim} coordinates, got {raw!r}")
    try:
        return Point.of(params.field, *(int(v) for v in raw))
    except (TypeError, ValueError) as exc:
        raise MalformedRun(f"bad coordinates {raw!r}") from exc


def parse_transcript(data: dict) -> tuple[SuitableParams, Run, str]:
    """Decode and structurally validate a transcript dictionary.

    Parameter problems raise InvalidParams subclasses; shape problems raise
    MalformedRun.
    """
    if not isinstance(data, dict):
        raise MalformedRun("transcript must be a JSON object")
    try:
        p = data["params"]
        params = validate_suitable(int(p["m"]), int(p["q"]), int(p["d"]), tuple(p["tau"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRun(f"bad params block: {exc}") from exc
    variant = data.get("variant", VARIANT_SHIFTED)
    if variant not in VARIANTS:
        raise MalformedRun(f"unknown variant {variant!r}")
    raw_tokens = data.get("tokens")
    if not isinstance(raw_tokens, list):
        raise MalformedRun("transcript must carry a token list")
    tokens = []
    for i, raw in enumerate(raw_tokens):
        if not isinstance(raw, dict):
            raise MalformedRun(f"token {i} is not an object")
        kind = raw.get("type")
        if kind == "assignment":
            entries = raw.get("map")
            if not isinstance(entries, list):
                raise MalformedRun("assignment token needs a map")
            mapping = {}
            for entry in entries:
                if not isinstance(entry, list) or len(entry) != 2:
                    raise MalformedRun(f"bad assignment entry {entry!r}")
                card = _decode_card(entry[0])
                if card in mapping:
                    raise MalformedRun(f"card {card!r} assigned twice")
                mapping[card] = _decode_point(entry[1], params, params.d + 1)
            tokens.append(Assignment(mapping))
        elif kind == "projection":
            pts = raw.get("points")
            if not isinstance(pts, list):
                raise MalformedRun("projection token needs a point list")
            decoded = [_decode_point(v, params, params.d) for v in pts]
            if len(set(decoded)) != len(decoded):
                raise MalformedRun(f"token {i} repeats a point")
            tokens.append(Projection(frozenset(decoded)))
        else:
            raise MalformedRun(f"unknown token type {kind!r}")
    return params, Run(tuple(tokens)), variant


def load_transcript(path) -> tuple[SuitableParams, Run, str]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedRun(f"{path}: not valid JSON ({exc})") from exc
    return parse_transcript(data)


# --- deal files -----------------------------------------------------------------


def deal_to_dict(deal: Deal, tau: DistributionType) -> dict:
    return {
        "tau": list(tau.sizes),
        "hands": {
            agent: sorted(deal[agent], key=card_sort_key) for agent in deal.agents
        },
    }


def save_deal(path, deal: Deal, tau: DistributionType):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dump(deal_to_dict(deal, tau)))


def load_deal(path) -> tuple[DistributionType, Deal]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedRun(f"{path}: not valid JSON ({exc})") from exc
    try:
        tau = DistributionType(tuple(int(s) for s in data["tau"]))
        hands = {
            str(agent): [_decode_card(c) for c in cards]
            for agent, cards in data["hands"].items()
        }
        deal = Deal(hands)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedRun(f"{path}: bad deal file ({exc})") from exc
    return tau, deal


# --- reports ---------------------------------------------------------------------


def _pair(fr: Fraction) -> list[int]:
    return [fr.numerator, fr.denominator]


def report_to_dict(report: SafetyReport) -> dict:
    cells = [
        {"card": card, "agent": agent, "num": prob.numerator, "den": prob.denominator}
        for card in sorted(report.posteriors, key=card_sort_key)
        for agent, prob in sorted(report.posteriors[card].items())
    ]
    return {
        "priors": {agent: _pair(pr) for agent, pr in report.priors.items()},
        "cells": cells,
        "weakly_safe": report.weakly_safe,
        "perfectly_safe": report.perfectly_safe,
    }


def report_json_bytes(report: SafetyReport) -> bytes:
    return _dump(report_to_dict(report)).encode("utf-8")


def save_report(path, report: SafetyReport):
    with open(path, "wb") as fh:
        fh.write(report_json_bytes(report))


def write_report_csv(path, report: SafetyReport):
    """Delimited form of the report: one row per card-agent cell."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["card", "agent", "num", "den", "prior_num", "prior_den"])
        for card in sorted(report.posteriors, key=card_sort_key):
            for agent, prob in sorted(report.posteriors[card].items()):
                prior = report.priors[agent]
                writer.writerow(
                    [card, agent, prob.numerator, prob.denominator,
                     prior.numerator, prior.denominator]
                )
