import csv

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuecast.countries import map_continent
from valuecast.exceptions import (
    BadAbility,
    BadOrdinal,
    DuplicateKey,
    InconsistentRow,
    MissingColumn,
    UnknownCountry,
)
from valuecast.ingest import (
    SOFIFA_COLUMNS,
    WHOSCORED_COLUMNS,
    drop_missing,
    merge_sources,
    normalize_key,
    parse_sofifa_csv,
    parse_whoscored_csv,
    read_records,
    write_records,
    write_sofifa_csv,
    write_whoscored_csv,
)
from valuecast.records import ABILITY_NAMES
from valuecast.synth import synth_generate

from conftest import make_record


def sofifa_line(name="Ada Lovelace", club="Test FC", **over):
    row = {
        "name": name, "age": "24", "height": "5'11\"", "weight": "154lbs",
        "nationality": "Brazil", "club": club, "league": "Premier League",
        "preferred_foot": "Right", "international_reputation": "2",
        "weak_foot": "3", "skill_moves": "4",
        "attacking_work_rate": "High", "defensive_work_rate": "Medium",
        "positions": "LM;LW;CF", "best_position": "LM",
        "overall": "78", "best_overall": "79", "potential": "84",
        "market_value": "€1.5M", "wage": "€25K", "release_clause": "€2.1M",
    }
    row.update({a: "55" for a in ABILITY_NAMES})
    row.update(over)
    return row


def whoscored_line(name="Ada Lovelace", club="Test FC", **over):
    row = {
        "player_name": name, "club": club,
        "goal_acquisition": "80", "goal_against": "30", "goal_difference": "50",
        "victory_point": "85", "win": "27", "draw": "4", "lose": "7",
        "team_standing": "1", "scoring_point": "10", "assist_point": "5",
        "goal_point": "15", "shooting": "60", "effective_shooting": "25",
        "personal_score_ranking": "4", "corner_kick": "12", "penalty_kick": "2",
        "foul": "20", "offside": "8", "yellow_card": "3", "red_card": "0",
        "games_played": "30",
    }
    row.update(over)
    return row


def write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)


def test_header_only_gives_empty_list(tmp_path):
    path = tmp_path / "s.csv"
    write_csv(path, SOFIFA_COLUMNS, [])
    assert parse_sofifa_csv(path).records == []


def test_missing_column_rejected(tmp_path):
    path = tmp_path / "s.csv"
    cols = [c for c in SOFIFA_COLUMNS if c != "overall"]
    write_csv(path, cols, [])
    with pytest.raises(MissingColumn):
        parse_sofifa_csv(path)


def test_bad_ordinal_reports_line(tmp_path):
    path = tmp_path / "s.csv"
    write_csv(path, SOFIFA_COLUMNS, [sofifa_line(), sofifa_line(name="B", weak_foot="6")])
    with pytest.raises(BadOrdinal) as err:
        parse_sofifa_csv(path)
    assert err.value.line == 3
    collected = parse_sofifa_csv(path, on_error="collect")
    assert len(collected.records) == 1 and len(collected.errors) == 1


def test_bad_ability_rejected(tmp_path):
    path = tmp_path / "s.csv"
    write_csv(path, SOFIFA_COLUMNS, [sofifa_line(finishing="120")])
    with pytest.raises(BadAbility):
        parse_sofifa_csv(path)


def test_three_row_golden_fixture(tmp_path):
    path = tmp_path / "s.csv"
    rows = [sofifa_line(), sofifa_line(name="Grace Hopper", overall="91"),
            sofifa_line(name="Marie Curie", market_value="€750")]
    write_csv(path, SOFIFA_COLUMNS, rows)
    parsed = parse_sofifa_csv(path).records
    assert len(parsed) == 3
    assert parsed[0].name == "Ada Lovelace"
    assert parsed[0].positions == ("LM", "LW", "CF")
    assert parsed[0].abilities["finishing"] == 55
    assert parsed[1].overall == 91
    assert parsed[2].market_value == "€750"


def test_custom_schema_mapping(tmp_path):
    path = tmp_path / "s.csv"
    cols = ["player" if c == "name" else c for c in SOFIFA_COLUMNS]
    line = sofifa_line()
    line["player"] = line.pop("name")
    write_csv(path, cols, [line])
    parsed = parse_sofifa_csv(path, schema={"name": "player"})
    assert parsed.records[0].name == "Ada Lovelace"


def test_whoscored_identities(tmp_path):
    path = tmp_path / "w.csv"
    write_csv(path, WHOSCORED_COLUMNS, [whoscored_line()])
    assert len(parse_whoscored_csv(path).records) == 1

    write_csv(path, WHOSCORED_COLUMNS, [whoscored_line(goal_difference="49")])
    with pytest.raises(InconsistentRow):
        parse_whoscored_csv(path)

    write_csv(path, WHOSCORED_COLUMNS, [whoscored_line(goal_point="14")])
    with pytest.raises(InconsistentRow):
        parse_whoscored_csv(path)


def test_roundtrip_sofifa(tmp_path):
    rows, _ = synth_generate(60, seed=11)
    path = tmp_path / "s.csv"
    write_sofifa_csv(rows, path)
    assert parse_sofifa_csv(path).records == rows


def test_roundtrip_whoscored(tmp_path):
    _, rows = synth_generate(60, seed=12)
    path = tmp_path / "w.csv"
    write_whoscored_csv(rows, path)
    assert parse_whoscored_csv(path).records == rows


def test_merge_counts(tmp_path):
    s_path, w_path = tmp_path / "s.csv", tmp_path / "w.csv"
    names5 = ["A One", "B Two", "C Three", "D Four", "E Five"]
    write_csv(s_path, SOFIFA_COLUMNS, [sofifa_line(name=n) for n in names5])
    write_csv(w_path, WHOSCORED_COLUMNS,
              [whoscored_line(name=n) for n in names5[:3] + ["Z Zed"]])
    merged = merge_sources(parse_sofifa_csv(s_path).records, parse_whoscored_csv(w_path).records)
    assert len(merged.records) == 3
    assert len(merged.unmatched_sofifa) == 2
    assert len(merged.unmatched_whoscored) == 1


def test_merge_single_pair_and_disjoint(tmp_path):
    s = parse_sofifa_csv(write_csv(tmp_path / "s.csv", SOFIFA_COLUMNS, [sofifa_line()]) or tmp_path / "s.csv").records
    w = parse_whoscored_csv(write_csv(tmp_path / "w.csv", WHOSCORED_COLUMNS, [whoscored_line()]) or tmp_path / "w.csv").records
    assert len(merge_sources(s, w).records) == 1
    w2 = [whoscored_line(name="Nobody Here")]
    write_csv(tmp_path / "w2.csv", WHOSCORED_COLUMNS, w2)
    merged = merge_sources(s, parse_whoscored_csv(tmp_path / "w2.csv").records)
    assert merged.records == []
    assert len(merged.unmatched_sofifa) == 1 and len(merged.unmatched_whoscored) == 1


def test_merge_normalizes_keys(tmp_path):
    write_csv(tmp_path / "s.csv", SOFIFA_COLUMNS, [sofifa_line(name="José  García")])
    write_csv(tmp_path / "w.csv", WHOSCORED_COLUMNS, [whoscored_line(name="jose garcia")])
    merged = merge_sources(parse_sofifa_csv(tmp_path / "s.csv").records,
                           parse_whoscored_csv(tmp_path / "w.csv").records)
    assert len(merged.records) == 1


def test_duplicate_key_raises(tmp_path):
    write_csv(tmp_path / "s.csv", SOFIFA_COLUMNS, [sofifa_line(), sofifa_line(age="30")])
    with pytest.raises(DuplicateKey):
        merge_sources(parse_sofifa_csv(tmp_path / "s.csv").records, [])


def test_merge_order_invariant():
    s_rows, w_rows = synth_generate(80, seed=21)
    a = merge_sources(s_rows, w_rows).records
    b = merge_sources(list(reversed(s_rows)), list(reversed(w_rows))).records
    assert a == b


def test_normalize_key():
    assert normalize_key("  Łukasz  PISZCZEK ", "Borussia") == ("łukasz piszczek", "borussia")
    assert normalize_key("José", "FC")[0] == "jose"


def test_drop_missing_counts(record):
    import dataclasses
    complete = [record] * 6
    holed = [dataclasses.replace(record, release_clause_keur=None)] * 4
    kept, dropped = drop_missing(complete + holed)
    assert len(kept) == 6 and dropped == 4


def test_map_continent():
    assert map_continent("Korea Republic") == "Asia"
    assert map_continent("Brazil") == "America"
    with pytest.raises(UnknownCountry):
        map_continent("Unknownland")


def test_records_roundtrip(tmp_path):
    records = [make_record(), make_record(overall=80, potential=85)]
    path = tmp_path / "records.csv"
    write_records(records, path)
    assert read_records(path) == records


@settings(max_examples=25, deadline=None)
@given(n=st.integers(50, 90), seed=st.integers(0, 10_000))
def test_synth_records_always_complete(n, seed):
    s_rows, w_rows = synth_generate(n, seed=seed)
    merged = merge_sources(s_rows, w_rows)
    kept, dropped = drop_missing(merged.records)
    assert dropped == 0 and len(kept) == n
    for r in kept:
        assert r.is_complete()
        assert r.market_value_keur > 0
        assert 1 <= len(r.positions) <= 3
        assert all(1 <= v <= 99 for v in r.abilities.values())
