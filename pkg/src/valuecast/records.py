"""Domain records and the fixed attribute vocabulary.

The 35-ability list is pinned here. ``marking`` is what newer SOFIFA vintages
call "defensive awareness"; the old name is kept as the canonical column and
``ABILITY_ALIASES`` records the alias. ``gk_speed`` is part of the 35 (and of
the total-stats sum) but does not enter the goalkeeping composite.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

ATTACKING_ABILITIES = ("crossing", "finishing", "heading_accuracy", "short_passing", "volleys")
SKILL_ABILITIES = ("dribbling", "curve", "fk_accuracy", "long_passing", "ball_control")
MOVEMENT_ABILITIES = ("acceleration", "sprint_speed", "agility", "reactions", "balance")
POWER_ABILITIES = ("shot_power", "jumping", "stamina", "strength", "long_shots")
MENTALITY_ABILITIES = ("aggression", "interceptions", "positioning", "vision", "penalties", "composure")
DEFENDING_ABILITIES = ("marking", "standing_tackle", "sliding_tackle")
GOALKEEPING_ABILITIES = ("gk_diving", "gk_handling", "gk_kicking", "gk_positioning", "gk_reflexes", "gk_speed")

ABILITY_NAMES: tuple[str, ...] = (
    ATTACKING_ABILITIES
    + SKILL_ABILITIES
    + MOVEMENT_ABILITIES
    + POWER_ABILITIES
    + MENTALITY_ABILITIES
    + DEFENDING_ABILITIES
    + GOALKEEPING_ABILITIES
)
assert len(ABILITY_NAMES) == 35

ABILITY_ALIASES = {"defensive_awareness": "marking"}

POSITION_CODES = (
    "ST", "LS", "RS", "LF", "CF", "RF", "LW", "RW",
    "LM", "RM", "LAM", "CAM", "RAM", "LCM", "CM", "RCM", "LDM", "CDM", "RDM",
    "LCB", "CB", "RCB", "LB", "RB", "LWB", "RWB",
    "GK",
)
assert len(POSITION_CODES) == 27

LEAGUES = ("Premier League", "La Liga", "Bundesliga", "Ligue 1", "Serie A")
CONTINENTS = ("Africa", "America", "Asia", "Europe", "Oceania")
FOOT_VALUES = ("Left", "Right")
WORK_RATES = ("Low", "Medium", "High")
WORK_RATE_LEVELS = {"Low": 0, "Medium": 1, "High": 2}


@dataclass(frozen=True)
class RawSofifaRow:
    """One SOFIFA CSV row, text fields kept verbatim; ``None`` marks a blank cell."""

    name: str
    age: int | None
    height: str | None          # feet'inches" or "<n>cm"
    weight: str | None          # "<n>lbs" or "<n>kg"
    nationality: str | None
    club: str
    league: str | None
    preferred_foot: str | None
    international_reputation: int | None
    weak_foot: int | None
    skill_moves: int | None
    attacking_work_rate: str | None
    defensive_work_rate: str | None
    positions: tuple[str, ...] | None
    best_position: str | None
    abilities: dict[str, int | None] = field(default_factory=dict)
    overall: int | None = None
    best_overall: int | None = None
    potential: int | None = None
    market_value: str | None = None    # "€<x>M" / "€<x>K" / "€<x>"
    wage: str | None = None
    release_clause: str | None = None


@dataclass(frozen=True)
class RawWhoscoredRow:
    """One WhoScored CSV row (club + player match record)."""

    player_name: str
    club: str
    goal_acquisition: float | None
    goal_against: float | None
    goal_difference: float | None
    victory_point: float | None
    win: int | None
    draw: int | None
    lose: int | None
    team_standing: int | None
    scoring_point: float | None
    assist_point: float | None
    goal_point: float | None
    shooting: float | None
    effective_shooting: float | None
    personal_score_ranking: int | None
    corner_kick: float | None
    penalty_kick: float | None
    foul: float | None
    offside: float | None
    yellow_card: int | None
    red_card: int | None
    games_played: float | None


WHOSCORED_STAT_FIELDS = (
    "goal_acquisition", "goal_against", "goal_difference", "victory_point",
    "win", "draw", "lose", "team_standing",
    "scoring_point", "assist_point", "goal_point", "shooting", "effective_shooting",
    "personal_score_ranking", "corner_kick", "penalty_kick", "foul", "offside",
    "yellow_card", "red_card", "games_played",
)


@dataclass(frozen=True)
class PlayerRecord:
    """A fully merged, unit-normalized, complete player row.

    Invariants: no ``None`` field, monetary amounts in k€, height in cm,
    weight in kg, ``market_value_keur > 0``.
    """

    name: str
    club: str
    league: str
    nationality: str
    continent: str
    age: int
    height_cm: float
    weight_kg: float
    preferred_foot: str
    international_reputation: int
    weak_foot: int
    skill_moves: int
    attacking_work_rate: str
    defensive_work_rate: str
    positions: tuple[str, ...]
    best_position: str
    abilities: dict[str, int]
    overall: int
    best_overall: int
    potential: int
    market_value_keur: float
    wage_keur: float
    release_clause_keur: float
    goal_acquisition: float
    goal_against: float
    goal_difference: float
    victory_point: float
    win: int
    draw: int
    lose: int
    team_standing: int
    scoring_point: float
    assist_point: float
    goal_point: float
    shooting: float
    effective_shooting: float
    personal_score_ranking: int
    corner_kick: float
    penalty_kick: float
    foul: float
    offside: float
    yellow_card: int
    red_card: int
    games_played: float

    def is_complete(self) -> bool:
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                return False
            if f.name == "abilities":
                if set(v) != set(ABILITY_NAMES) or any(x is None for x in v.values()):
                    return False
        return True
