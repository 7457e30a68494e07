"""CSV ingestion: parse the two tabular sources, merge, and clean.

Both parsers accept a documented fixed-name header (see SOFIFA_COLUMNS and
WHOSCORED_COLUMNS). Blank cells become ``None`` and are swept out later by
``drop_missing``; cells that are present but violate a declared range are
malformed and reported with their 1-based line number.
"""

from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass, fields, replace

from . import units
from .countries import map_continent
from .exceptions import (
    BadAbility,
    BadMoney,
    BadHeight,
    BadOrdinal,
    BadPosition,
    BadWeight,
    DuplicateKey,
    InconsistentRow,
    MissingColumn,
    RowError,
    UnknownCountry,
)
from .records import (
    ABILITY_NAMES,
    FOOT_VALUES,
    LEAGUES,
    POSITION_CODES,
    WHOSCORED_STAT_FIELDS,
    WORK_RATES,
    PlayerRecord,
    RawSofifaRow,
    RawWhoscoredRow,
)

SOFIFA_COLUMNS: tuple[str, ...] = (
    "name", "age", "height", "weight", "nationality", "club", "league",
    "preferred_foot", "international_reputation", "weak_foot", "skill_moves",
    "attacking_work_rate", "defensive_work_rate", "positions", "best_position",
) + ABILITY_NAMES + (
    "overall", "best_overall", "potential", "market_value", "wage", "release_clause",
)

WHOSCORED_COLUMNS: tuple[str, ...] = ("player_name", "club") + WHOSCORED_STAT_FIELDS

_WHOSCORED_INT_FIELDS = {
    "win", "draw", "lose", "team_standing", "personal_score_ranking",
    "yellow_card", "red_card",
}

ORDINAL_FIELDS = ("international_reputation", "weak_foot", "skill_moves")


@dataclass
class ParseResult:
    records: list
    errors: list[RowError]


def _blank(cell: str | None) -> bool:
    return cell is None or cell.strip() == ""


def _parse_int(cell: str, what: str, line: int) -> int:
    try:
        return int(cell.strip())
    except ValueError:
        raise RowError(f"{what} is not an integer: {cell!r}", line) from None


def _parse_float(cell: str, what: str, line: int) -> float:
    try:
        return float(cell.strip())
    except ValueError:
        raise RowError(f"{what} is not a number: {cell!r}", line) from None


def _check_header(header: list[str], required: tuple[str, ...], schema: dict[str, str] | None):
    mapping = {name: name for name in required}
    if schema:
        mapping.update(schema)
    present = set(header)
    for canonical, actual in mapping.items():
        if actual not in present:
            raise MissingColumn(f"required column {actual!r} (for {canonical!r}) not in header")
    return mapping


def _sofifa_row(raw: dict[str, str], line: int) -> RawSofifaRow:
    if _blank(raw.get("name")) or _blank(raw.get("club")):
        raise RowError("name and club are required join-key fields", line)

    def opt(field, conv=None):
        cell = raw.get(field)
        if _blank(cell):
            return None
        return conv(cell) if conv else cell.strip()

    age = opt("age", lambda c: _parse_int(c, "age", line))
    if age is not None and age <= 0:
        raise RowError(f"age must be positive, got {age}", line)

    ordinals = {}
    for field in ORDINAL_FIELDS:
        v = opt(field, lambda c: _parse_int(c, field, line))
        if v is not None and not 1 <= v <= 5:
            raise BadOrdinal(f"{field}={v} outside 1..5", line)
        ordinals[field] = v

    for field in ("preferred_foot",):
        v = opt(field)
        if v is not None and v not in FOOT_VALUES:
            raise RowError(f"preferred_foot must be Left or Right, got {v!r}", line)
    for field in ("attacking_work_rate", "defensive_work_rate"):
        v = opt(field)
        if v is not None and v not in WORK_RATES:
            raise RowError(f"{field} must be one of {WORK_RATES}, got {v!r}", line)

    positions = None
    if not _blank(raw.get("positions")):
        codes = tuple(p.strip() for p in raw["positions"].split(";") if p.strip())
        if not 1 <= len(codes) <= 3:
            raise BadPosition(f"positions list must have 1..3 codes, got {len(codes)}", line)
        for code in codes:
            if code not in POSITION_CODES:
                raise BadPosition(f"unknown position code {code!r}", line)
        positions = codes
    best_position = opt("best_position")
    if best_position is not None and best_position not in POSITION_CODES:
        raise BadPosition(f"unknown best_position code {best_position!r}", line)

    abilities: dict[str, int | None] = {}
    for name in ABILITY_NAMES:
        v = opt(name, lambda c: _parse_int(c, name, line))
        if v is not None and not 1 <= v <= 99:
            raise BadAbility(f"{name}={v} outside 1..99", line)
        abilities[name] = v
    rating = {}
    for field in ("overall", "best_overall", "potential"):
        v = opt(field, lambda c: _parse_int(c, field, line))
        if v is not None and not 1 <= v <= 99:
            raise BadAbility(f"{field}={v} outside 1..99", line)
        rating[field] = v

    return RawSofifaRow(
        name=raw["name"].strip(),
        age=age,
        height=opt("height"),
        weight=opt("weight"),
        nationality=opt("nationality"),
        club=raw["club"].strip(),
        league=opt("league"),
        preferred_foot=opt("preferred_foot"),
        international_reputation=ordinals["international_reputation"],
        weak_foot=ordinals["weak_foot"],
        skill_moves=ordinals["skill_moves"],
        attacking_work_rate=opt("attacking_work_rate"),
        defensive_work_rate=opt("defensive_work_rate"),
        positions=positions,
        best_position=best_position,
        abilities=abilities,
        overall=rating["overall"],
        best_overall=rating["best_overall"],
        potential=rating["potential"],
        market_value=opt("market_value"),
        wage=opt("wage"),
        release_clause=opt("release_clause"),
    )


def _whoscored_row(raw: dict[str, str], line: int) -> RawWhoscoredRow:
    if _blank(raw.get("player_name")) or _blank(raw.get("club")):
        raise RowError("player_name and club are required join-key fields", line)
    values: dict[str, float | int | None] = {}
    for field in WHOSCORED_STAT_FIELDS:
        cell = raw.get(field)
        if _blank(cell):
            values[field] = None
        elif field in _WHOSCORED_INT_FIELDS:
            values[field] = _parse_int(cell, field, line)
        else:
            values[field] = _parse_float(cell, field, line)

    ga, agn, diff = values["goal_acquisition"], values["goal_against"], values["goal_difference"]
    if None not in (ga, agn, diff) and abs((ga - agn) - diff) > 1e-9:
        raise InconsistentRow(
            f"goal_difference={diff} but goal_acquisition-goal_against={ga - agn}", line
        )
    sc, asst, gp = values["scoring_point"], values["assist_point"], values["goal_point"]
    if None not in (sc, asst, gp) and abs((sc + asst) - gp) > 1e-9:
        raise InconsistentRow(
            f"goal_point={gp} but scoring_point+assist_point={sc + asst}", line
        )
    return RawWhoscoredRow(player_name=raw["player_name"].strip(), club=raw["club"].strip(), **values)


def _parse_csv(path, required, schema, row_builder, on_error):
    records, errors = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingColumn(f"{path}: empty file, header row is mandatory") from None
        mapping = _check_header(header, required, schema)
        index = {canonical: header.index(actual) for canonical, actual in mapping.items()}
        for line_no, row in enumerate(reader, start=2):
            if not row or all(c.strip() == "" for c in row):
                continue
            raw = {
                canonical: row[i] if i < len(row) else ""
                for canonical, i in index.items()
            }
            try:
                records.append(row_builder(raw, line_no))
            except RowError as err:
                if on_error == "raise":
                    raise
                errors.append(err)
    return ParseResult(records, errors)


def parse_sofifa_csv(path, schema: dict[str, str] | None = None, on_error: str = "raise") -> ParseResult:
    """Parse a SOFIFA-style CSV into RawSofifaRow records.

    ``schema`` remaps canonical column names to the actual header names.
    With ``on_error="collect"`` malformed rows are reported in
    ``ParseResult.errors`` instead of raising on the first one.
    """
    return _parse_csv(path, SOFIFA_COLUMNS, schema, _sofifa_row, on_error)


def parse_whoscored_csv(path, schema: dict[str, str] | None = None, on_error: str = "raise") -> ParseResult:
    """Parse a WhoScored-style CSV into RawWhoscoredRow records."""
    return _parse_csv(path, WHOSCORED_COLUMNS, schema, _whoscored_row, on_error)


# --- join ----------------------------------------------------------------------


def normalize_key(name: str, club: str) -> tuple[str, str]:
    """Join-key normalization: casefold, strip diacritics, collapse whitespace."""

    def norm(text: str) -> str:
        text = unicodedata.normalize("NFKD", text)
        text = "".join(ch for ch in text if not unicodedata.combining(ch))
        return " ".join(text.casefold().split())

    return norm(name), norm(club)


@dataclass
class MergeResult:
    records: list[PlayerRecord]
    unmatched_sofifa: list[tuple[str, str]]
    unmatched_whoscored: list[tuple[str, str]]
    rejected: list[str]         # human-readable reasons (unknown country, bad units)

    def report_lines(self) -> list[str]:
        lines = [f"unmatched sofifa row: {k}" for k in self.unmatched_sofifa]
        lines += [f"unmatched whoscored row: {k}" for k in self.unmatched_whoscored]
        lines += self.rejected
        return lines


def _convert(value, converter, rejected, key, what):
    if value is None:
        return None
    try:
        return converter(value)
    except (BadHeight, BadWeight, BadMoney) as err:
        rejected.append(f"{key}: {what} treated as missing ({err})")
        return None


def merge_sources(
    sofifa: list[RawSofifaRow],
    whoscored: list[RawWhoscoredRow],
) -> MergeResult:
    """Inner-join the two sources on the normalized (name, club) pair.

    Produces candidate PlayerRecords with normalized units; fields that are
    blank or fail unit conversion stay ``None`` for ``drop_missing`` to sweep.
    Two rows sharing a join key raise DuplicateKey.
    """
    s_index: dict[tuple[str, str], RawSofifaRow] = {}
    for row in sofifa:
        key = normalize_key(row.name, row.club)
        if key in s_index:
            raise DuplicateKey(f"duplicate sofifa join key {key}")
        s_index[key] = row
    w_index: dict[tuple[str, str], RawWhoscoredRow] = {}
    for row in whoscored:
        key = normalize_key(row.player_name, row.club)
        if key in w_index:
            raise DuplicateKey(f"duplicate whoscored join key {key}")
        w_index[key] = row

    matched = sorted(set(s_index) & set(w_index))
    result = MergeResult(
        records=[],
        unmatched_sofifa=sorted(set(s_index) - set(w_index)),
        unmatched_whoscored=sorted(set(w_index) - set(s_index)),
        rejected=[],
    )
    for key in matched:
        s, w = s_index[key], w_index[key]
        continent = None
        if s.nationality is not None:
            try:
                continent = map_continent(s.nationality)
            except UnknownCountry as err:
                result.rejected.append(f"{key}: row rejected ({err})")
                continue
        league = s.league if s.league in LEAGUES else None
        if s.league is not None and league is None:
            result.rejected.append(f"{key}: league {s.league!r} not a known league, treated as missing")
        market_value = _convert(s.market_value, units.unify_monetary, result.rejected, key, "market_value")
        if market_value is not None and market_value <= 0:
            result.rejected.append(f"{key}: non-positive market value treated as missing")
            market_value = None
        record = PlayerRecord(
            name=s.name,
            club=s.club,
            league=league,
            nationality=s.nationality,
            continent=continent,
            age=s.age,
            height_cm=_convert(s.height, units.convert_height, result.rejected, key, "height"),
            weight_kg=_convert(s.weight, units.convert_weight, result.rejected, key, "weight"),
            preferred_foot=s.preferred_foot,
            international_reputation=s.international_reputation,
            weak_foot=s.weak_foot,
            skill_moves=s.skill_moves,
            attacking_work_rate=s.attacking_work_rate,
            defensive_work_rate=s.defensive_work_rate,
            positions=s.positions,
            best_position=s.best_position,
            abilities=dict(s.abilities),
            overall=s.overall,
            best_overall=s.best_overall,
            potential=s.potential,
            market_value_keur=market_value,
            wage_keur=_convert(s.wage, units.unify_monetary, result.rejected, key, "wage"),
            release_clause_keur=_convert(s.release_clause, units.unify_monetary, result.rejected, key, "release_clause"),
            **{f: getattr(w, f) for f in WHOSCORED_STAT_FIELDS},
        )
        result.records.append(record)
    return result


def drop_missing(records: list[PlayerRecord]) -> tuple[list[PlayerRecord], int]:
    """Keep only fully populated records; return (kept, dropped_count)."""
    kept = [r for r in records if r.is_complete()]
    return kept, len(records) - len(kept)


# --- serialization ---------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_sofifa_csv(rows: list[RawSofifaRow], path) -> None:
    """Serialize raw rows back to the documented CSV schema (round-trip safe)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SOFIFA_COLUMNS)
        for r in rows:
            record = {
                **{f.name: getattr(r, f.name) for f in fields(r) if f.name not in ("abilities", "positions")},
                **r.abilities,
                "positions": ";".join(r.positions) if r.positions else "",
            }
            writer.writerow([_fmt(record[c]) for c in SOFIFA_COLUMNS])


def write_whoscored_csv(rows: list[RawWhoscoredRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(WHOSCORED_COLUMNS)
        for r in rows:
            writer.writerow([_fmt(getattr(r, c)) for c in WHOSCORED_COLUMNS])


def _record_columns() -> tuple[str, ...]:
    cols: list[str] = []
    for f in fields(PlayerRecord):
        if f.name == "abilities":
            cols.extend(ABILITY_NAMES)
        else:
            cols.append(f.name)
    return tuple(cols)


RECORD_COLUMNS: tuple[str, ...] = _record_columns()

_RECORD_INT_FIELDS = {
    "age", "international_reputation", "weak_foot", "skill_moves",
    "overall", "best_overall", "potential",
} | _WHOSCORED_INT_FIELDS
_RECORD_FLOAT_FIELDS = {
    "height_cm", "weight_kg", "market_value_keur", "wage_keur", "release_clause_keur",
} | {f for f in WHOSCORED_STAT_FIELDS if f not in _WHOSCORED_INT_FIELDS}


def write_records(records: list[PlayerRecord], path) -> None:
    """Serialize merged PlayerRecords to a flat CSV (the pipeline handoff file)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_COLUMNS)
        for r in records:
            row = []
            for c in RECORD_COLUMNS:
                if c in ABILITY_NAMES:
                    row.append(_fmt(r.abilities.get(c)))
                elif c == "positions":
                    row.append(";".join(r.positions) if r.positions else "")
                else:
                    row.append(_fmt(getattr(r, c)))
            writer.writerow(row)


def read_records(path) -> list[PlayerRecord]:
    """Load PlayerRecords written by ``write_records`` (exact round trip)."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(RECORD_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise MissingColumn(f"records file lacks columns: {sorted(missing)}")
        for raw in reader:
            kwargs = {}
            abilities = {}
            for c in RECORD_COLUMNS:
                cell = raw[c]
                if c in ABILITY_NAMES:
                    abilities[c] = int(cell) if cell != "" else None
                elif c == "positions":
                    kwargs[c] = tuple(cell.split(";")) if cell else None
                elif cell == "":
                    kwargs[c] = None
                elif c in _RECORD_INT_FIELDS:
                    kwargs[c] = int(cell)
                elif c in _RECORD_FLOAT_FIELDS:
                    kwargs[c] = float(cell)
                else:
                    kwargs[c] = cell
            out.append(PlayerRecord(abilities=abilities, **kwargs))
    return out
