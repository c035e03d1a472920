"""Wire formats: transcripts, deal files, reports."""

import json
import random

import pytest

from cardshare import deal_random, demo, finish, new_session, play, probability_report
from cardshare.errors import InvalidParams, MalformedRun
from cardshare.protocol import VARIANT_UNSHIFTED
from cardshare.transcript import (
    deal_to_dict,
    load_deal,
    load_transcript,
    parse_transcript,
    report_json_bytes,
    report_to_dict,
    save_deal,
    save_report,
    save_transcript,
    transcript_to_dict,
    write_report_csv,
)


def test_transcript_round_trip(tmp_path, worked_params, worked_run):
    path = tmp_path / "t.json"
    save_transcript(path, worked_params, worked_run)
    params, run, variant = load_transcript(path)
    assert params == worked_params
    assert variant == "shifted"
    assert run == worked_run


def test_transcript_bytes_are_stable(tmp_path, worked_params, worked_run):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_transcript(a, worked_params, worked_run)
    params, run, variant = load_transcript(a)
    save_transcript(b, params, run, variant)
    assert a.read_bytes() == b.read_bytes()


def test_transcript_carries_variant(tmp_path, worked_params):
    run = demo.worked_example_run(VARIANT_UNSHIFTED)
    path = tmp_path / "u.json"
    save_transcript(path, worked_params, run, VARIANT_UNSHIFTED)
    _, loaded, variant = load_transcript(path)
    assert variant == VARIANT_UNSHIFTED
    assert loaded == run


def test_transcript_dict_ordering(worked_params, worked_run):
    data = transcript_to_dict(worked_params, worked_run)
    cards = [entry[0] for entry in data["tokens"][0]["map"]]
    assert cards == sorted(cards)
    for token in data["tokens"][1:]:
        assert token["points"] == sorted(token["points"])
    assert data["params"] == {"m": 2, "q": 4, "d": 1, "tau": [12, 2, 2]}


def test_transcript_contains_no_hands(worked_params, worked_run):
    text = json.dumps(transcript_to_dict(worked_params, worked_run))
    assert "hands" not in text


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("tokens"),
        lambda d: d["tokens"].append({"type": "mystery"}),
        lambda d: d["tokens"][0]["map"].append([0, [1, 1]]),           # duplicate card
        lambda d: d["tokens"][1]["points"].append([9]),                 # value out of range
        lambda d: d["tokens"][1]["points"].__setitem__(0, [1, 2]),      # wrong dimension
        lambda d: d.__setitem__("variant", "sideways"),
        lambda d: d["tokens"].insert(0, d["tokens"][1]),                # projection first
    ],
)
def test_malformed_transcripts_rejected(worked_params, worked_run, mutate):
    data = transcript_to_dict(worked_params, worked_run)
    mutate(data)
    with pytest.raises(MalformedRun):
        parse_transcript(data)


def test_unsuitable_params_rejected(worked_params, worked_run):
    data = transcript_to_dict(worked_params, worked_run)
    data["params"]["tau"] = [11, 3, 2]
    with pytest.raises(InvalidParams):
        parse_transcript(data)


def test_invalid_json_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(MalformedRun):
        load_transcript(path)


def test_deal_file_round_trip(tmp_path, worked_params, worked_deal):
    path = tmp_path / "deal.json"
    save_deal(path, worked_deal, worked_params.tau)
    tau, deal = load_deal(path)
    assert tau.sizes == (12, 2, 2)
    assert deal == worked_deal


def test_deal_dict_shape(worked_params, worked_deal):
    data = deal_to_dict(worked_deal, worked_params.tau)
    assert data["tau"] == [12, 2, 2]
    assert data["hands"]["B1"] == [5, 15]
    assert data["hands"]["B2"] == [0, 10]


def test_string_card_ids_round_trip(tmp_path, worked_params):
    deck = [f"w{i:02d}" for i in range(16)]
    rng = random.Random(12)
    deal = deal_random(worked_params, deck, rng)
    from cardshare import run_protocol

    run = run_protocol(deal, worked_params, rng)
    t = tmp_path / "t.json"
    save_transcript(t, worked_params, run)
    _, loaded, _ = load_transcript(t)
    assert loaded == run
    report = probability_report(loaded, worked_params)
    assert report.perfectly_safe
    d = tmp_path / "d.json"
    save_deal(d, deal, worked_params.tau)
    assert load_deal(d)[1] == deal


def test_report_dict_reduced_pairs(worked_params, worked_run):
    report = probability_report(worked_run, worked_params)
    data = report_to_dict(report)
    assert data["priors"] == {"A": [3, 4], "B1": [1, 8], "B2": [1, 8]}
    assert data["perfectly_safe"] is True and data["weakly_safe"] is True
    assert len(data["cells"]) == 16 * 3
    first = data["cells"][0]
    assert first == {"card": 0, "agent": "A", "num": 3, "den": 4}


def test_report_files(tmp_path, worked_params, worked_run):
    report = probability_report(worked_run, worked_params)
    jpath = tmp_path / "r.json"
    save_report(jpath, report)
    assert json.loads(jpath.read_text())["perfectly_safe"] is True
    cpath = tmp_path / "r.csv"
    write_report_csv(cpath, report)
    lines = cpath.read_text().strip().splitlines()
    assert lines[0] == "card,agent,num,den,prior_num,prior_den"
    assert len(lines) == 1 + 16 * 3
    assert lines[1] == "0,A,3,4,3,4"


def test_session_round_trip_bytes(tmp_path, worked_params):
    s = play(new_session(worked_params, range(16), seed=50))
    result = finish(s)
    t = tmp_path / "t.json"
    save_transcript(t, worked_params, s.eve_view)
    params, run, variant = load_transcript(t)
    again = probability_report(run, params, variant)
    assert report_json_bytes(again) == report_json_bytes(result.report)
