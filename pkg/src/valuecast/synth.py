"""Seeded synthetic stand-in for the two data sources.

Produces schema-conformant SOFIFA-like and WhoScored-like rows for n
players across 20 clubs (4 per league). Market value is a documented
function of overall, growth (potential minus overall), age and
international reputation with star/age-decline kinks and heavy-tailed
(Student-t) multiplicative noise; the intercept is calibrated so the
n=2720 default-seed mean lands near 9,020 k€. The release clause is the
value times lognormal noise, so it correlates strongly with the target
without making the mapping exactly linear; wage gets wider noise.

Every generated row is complete and survives the ingest pipeline with zero
drops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .records import (
    ABILITY_NAMES,
    ATTACKING_ABILITIES,
    DEFENDING_ABILITIES,
    GOALKEEPING_ABILITIES,
    LEAGUES,
    MENTALITY_ABILITIES,
    MOVEMENT_ABILITIES,
    POWER_ABILITIES,
    SKILL_ABILITIES,
    RawSofifaRow,
    RawWhoscoredRow,
)
from .validation import as_rng

_FIRST_NAMES = (
    "Adam", "Alejandro", "André", "Antoine", "Arjen", "Bruno", "Carlos", "Cem",
    "Daniel", "David", "Diego", "Dušan", "Eden", "Emil", "Enzo", "Fabio",
    "Felix", "Gaël", "Gonzalo", "Hugo", "Ivan", "Jakub", "James", "Joan",
    "John", "José", "Juan", "Kylian", "Lars", "Luís", "Luka", "Marco",
    "Mateo", "Mehdi", "Milan", "Nico", "Oliver", "Pedro", "Sadio", "Youssef",
)
_LAST_NAMES = (
    "Almeida", "Alvarez", "Andersen", "Aubame", "Bakker", "Baros", "Becker", "Bernat",
    "Bianchi", "Borges", "Bryan", "Campos", "Cardoso", "Carvalho", "Castro", "Costa",
    "Dembele", "Diallo", "Dias", "Dimitrov", "Duarte", "Dvořák", "Eriksen", "Fernandes",
    "Ferrari", "Fischer", "Fofana", "Fonseca", "García", "Gomes", "González", "Gutiérrez",
    "Hansen", "Hernández", "Horváth", "Ibrahim", "Jansen", "Jiménez", "Kamara", "Keita",
    "Kovač", "Kowalski", "Larsen", "López", "Mancini", "Martínez", "Mendes", "Meyer",
    "Moreau", "Moretti", "Müller", "Ndiaye", "Novak", "Oliveira", "Pereira", "Petit",
    "Ribeiro", "Ricci", "Rodríguez", "Romano", "Rossi", "Santos", "Schmidt", "Silva",
    "Sørensen", "Torres", "Traoré", "Vargas", "Weber", "Zielinski",
)

_NATION_POOLS = (
    # (continent weight, countries)
    (0.60, ("England", "Spain", "Germany", "France", "Italy", "Portugal", "Netherlands",
            "Belgium", "Croatia", "Denmark", "Poland", "Serbia", "Austria", "Switzerland",
            "Norway", "Sweden", "Scotland", "Wales", "Republic of Ireland", "Czech Republic")),
    (0.20, ("Brazil", "Argentina", "Uruguay", "Colombia", "Chile", "Mexico",
            "United States", "Ecuador", "Peru", "Canada")),
    (0.12, ("Nigeria", "Senegal", "Ghana", "Ivory Coast", "Morocco", "Algeria",
            "Cameroon", "Egypt", "Mali", "DR Congo")),
    (0.06, ("Japan", "Korea Republic", "Iran", "Saudi Arabia", "Uzbekistan", "China PR")),
    (0.02, ("Australia", "New Zealand")),
)

_ROLE_POSITIONS = {
    "GK": (("GK",),),
    "DEF": (("CB",), ("CB", "RB"), ("LB", "LWB"), ("RB", "RWB"), ("CB", "CDM"),
            ("LCB", "CB"), ("RCB", "CB", "RB")),
    "MID": (("CM",), ("CDM", "CM"), ("CM", "CAM"), ("LM", "CM"), ("RM", "CM"),
            ("CAM", "CM", "RM"), ("LDM", "CDM"), ("CAM", "LW")),
    "ATT": (("ST",), ("ST", "CF"), ("LW", "LM"), ("RW", "RM"), ("CF", "CAM"),
            ("LW", "ST", "RW"), ("LM", "LW", "CF"), ("RS", "ST")),
}

_WORK_RATES = ("Low", "Medium", "High")

# market value model: ln(value in k EUR) =
#   INTERCEPT + 0.08*(overall-70) + 0.04*growth + 0.18*(ir-1) + role premium
#   + stepped rating premiums (>=76, >=83) - 0.07*max(age-30, 0) + 0.025*(26-age)
#   + 0.09*t4 noise
# the release clause is value times a buyout multiplier that falls with age
# and rises with reputation, so the clause correlates strongly with value on
# levels while no single global slope maps it back
VALUE_INTERCEPT = 8.77
STAR_BONUS = 0.35
STAR_OVERALL = 83
GOOD_BONUS = 0.22
GOOD_OVERALL = 76
NOISE_SCALE = 0.09
ROLE_PREMIUM = {"GK": -0.22, "DEF": -0.05, "MID": 0.04, "ATT": 0.15}
VALUE_CAP_KEUR = 45_000.0


@dataclass
class _Club:
    name: str
    league: str
    rank: int
    strength: float
    record: dict


def _club_record(rank: int, rng: np.random.Generator) -> dict:
    wins = int(np.clip(rng.normal(27 - 3.2 * rank, 2.0), 10, 33))
    draws = int(np.clip(rng.normal(6, 2.0), 1, 12))
    losses = 38 - wins - draws
    scored = round(float(np.clip(rng.normal(88 - 9 * rank, 5.0), 35, 120)), 1)
    against = round(float(np.clip(rng.normal(26 + 5 * rank, 4.0), 10, 70)), 1)
    return {
        "goal_acquisition": scored,
        "goal_against": against,
        "goal_difference": round(scored - against, 1),
        "victory_point": float(3 * wins + draws),
        "win": wins,
        "draw": draws,
        "lose": losses,
        "team_standing": rank,
    }


def _make_clubs(rng: np.random.Generator) -> list[_Club]:
    clubs = []
    for league in LEAGUES:
        short = league.replace(" ", "")
        for rank in range(1, 5):
            clubs.append(_Club(
                name=f"{short} Club {rank}",
                league=league,
                rank=rank,
                strength=5.0 - rank,
                record=_club_record(rank, rng),
            ))
    return clubs


def _player_name(i: int) -> str:
    first = _FIRST_NAMES[i % len(_FIRST_NAMES)]
    last = _LAST_NAMES[(i // len(_FIRST_NAMES)) % len(_LAST_NAMES)]
    reps = i // (len(_FIRST_NAMES) * len(_LAST_NAMES))
    suffix = f" {'I' * (reps + 1)}" if reps else ""
    return f"{first} {last}{suffix}"


def _nationality(rng: np.random.Generator) -> str:
    weights = np.array([w for w, _ in _NATION_POOLS])
    pool = _NATION_POOLS[int(rng.choice(len(_NATION_POOLS), p=weights / weights.sum()))][1]
    return pool[int(rng.integers(0, len(pool)))]


def _height_string(rng: np.random.Generator, role: str) -> str:
    mean = 188.0 if role == "GK" else 181.0
    cm = float(np.clip(rng.normal(mean, 6.0), 162, 204))
    if rng.uniform() < 0.15:
        return f"{cm:.0f}cm"
    inches_total = int(round(cm / 2.54))
    return f"{inches_total // 12}'{inches_total % 12}\""


def _weight_string(rng: np.random.Generator, height: float) -> str:
    lbs = float(np.clip(rng.normal(100 + 0.9 * height, 9.0), 120, 230))
    if rng.uniform() < 0.12:
        return f"{lbs * 0.45359237:.0f}kg"
    return f"{lbs:.0f}lbs"


def _money_string(keur: float) -> str:
    if keur >= 1000.0:
        return f"€{keur / 1000.0:.1f}M"
    if keur >= 1.0:
        return f"€{keur:.0f}K"
    return f"€{keur * 1000.0:.0f}"


def _ability_block(role: str, quality: float, rng: np.random.Generator) -> dict[str, int]:
    def level(mean, spread=6.0):
        return int(np.clip(round(rng.normal(mean, spread)), 1, 99))

    q = quality
    out: dict[str, int] = {}
    if role == "GK":
        for name in GOALKEEPING_ABILITIES:
            out[name] = level(q + 2)
        for group in (ATTACKING_ABILITIES, SKILL_ABILITIES, POWER_ABILITIES):
            for name in group:
                out[name] = level(32, 9)
        for name in MOVEMENT_ABILITIES:
            out[name] = level(48, 8)
        for name in MENTALITY_ABILITIES:
            out[name] = level(42, 9)
        for name in DEFENDING_ABILITIES:
            out[name] = level(22, 7)
        return out

    offsets = {
        "DEF": {"att": -14, "skill": -6, "move": -2, "power": 4, "mental": 0, "def": 6},
        "MID": {"att": -2, "skill": 4, "move": 0, "power": -2, "mental": 4, "def": -8},
        "ATT": {"att": 6, "skill": 2, "move": 4, "power": 0, "mental": -2, "def": -22},
    }[role]
    for name in ATTACKING_ABILITIES:
        out[name] = level(q + offsets["att"])
    for name in SKILL_ABILITIES:
        out[name] = level(q + offsets["skill"])
    for name in MOVEMENT_ABILITIES:
        out[name] = level(q + offsets["move"])
    for name in POWER_ABILITIES:
        out[name] = level(q + offsets["power"])
    for name in MENTALITY_ABILITIES:
        out[name] = level(q + offsets["mental"])
    for name in DEFENDING_ABILITIES:
        out[name] = level(q + offsets["def"], 8.0)
    for name in GOALKEEPING_ABILITIES:
        out[name] = level(11, 3.0)
    return out


def market_value_keur(overall: int, growth: int, age: int, ir: int, role: str,
                      noise: float) -> float:
    """The documented value model; ``noise`` is a standard Student-t(4) draw."""
    ln_v = (
        VALUE_INTERCEPT
        + 0.08 * (overall - 70)
        + 0.04 * growth
        + 0.18 * (ir - 1)
        + ROLE_PREMIUM[role]
        + (STAR_BONUS if overall >= STAR_OVERALL else 0.0)
        + (GOOD_BONUS if overall >= GOOD_OVERALL else 0.0)
        - 0.07 * max(age - 30, 0)
        + 0.025 * (26 - age)
        + NOISE_SCALE * noise
    )
    return float(np.clip(math.exp(ln_v), 25.0, VALUE_CAP_KEUR))


def release_multiplier(age: int, ir: int) -> float:
    """Deterministic buyout factor: young, reputed players carry big clauses."""
    return (2.6 - 0.07 * (age - 17)) * (1.0 + 0.10 * (ir - 1))


def synth_generate(n: int, seed: int = 0) -> tuple[list[RawSofifaRow], list[RawWhoscoredRow]]:
    """Generate n complete players as raw rows for the two sources."""
    if n < 50:
        raise ValueError("the synthetic generator needs n >= 50")
    rng = as_rng(seed)
    clubs = _make_clubs(rng)
    sofifa_rows: list[RawSofifaRow] = []
    whoscored_rows: list[RawWhoscoredRow] = []
    for i in range(n):
        club = clubs[int(rng.integers(0, len(clubs)))]
        role = ("GK", "DEF", "MID", "ATT")[int(rng.choice(4, p=(0.09, 0.34, 0.33, 0.24)))]
        quality = float(np.clip(rng.normal(64.0 + 2.1 * club.strength, 6.0), 44, 93))
        abilities = _ability_block(role, quality, rng)
        overall = int(np.clip(round(quality + rng.normal(0, 1.5)), 45, 95))
        best_overall = int(np.clip(overall + int(rng.integers(0, 3)), 45, 97))
        age = int(np.clip(round(rng.triangular(17, 25, 38)), 17, 38))
        growth = int(np.clip(round(max(0.0, (27 - age) * rng.uniform(0.4, 1.1) + rng.normal(0, 0.8))), 0, 99 - overall))
        potential = overall + growth
        ir_score = (quality - 58.0) / 8.0 + rng.normal(0, 0.9)
        ir = int(np.clip(math.floor(ir_score), 1, 5))
        noise = float(rng.standard_t(4))
        value = market_value_keur(overall, growth, age, ir, role, noise)
        release_clause = value * release_multiplier(age, ir) * float(np.exp(rng.normal(0.0, 0.10)))
        wage = max(1.0, value * 0.0018 * float(np.exp(rng.normal(0.0, 0.6))))

        positions_pool = _ROLE_POSITIONS[role]
        positions = positions_pool[int(rng.integers(0, len(positions_pool)))]
        name = _player_name(i)
        height = _height_string(rng, role)
        sofifa_rows.append(RawSofifaRow(
            name=name,
            age=age,
            height=height,
            weight=_weight_string(rng, 181.0),
            nationality=_nationality(rng),
            club=club.name,
            league=club.league,
            preferred_foot="Left" if rng.uniform() < 0.25 else "Right",
            international_reputation=ir,
            weak_foot=int(rng.integers(1, 6)),
            skill_moves=int(np.clip(rng.integers(1, 6), 1, 5)),
            attacking_work_rate=_WORK_RATES[int(rng.choice(3, p=(0.15, 0.55, 0.30)))],
            defensive_work_rate=_WORK_RATES[int(rng.choice(3, p=(0.2, 0.55, 0.25)))],
            positions=positions,
            best_position=positions[0],
            abilities=abilities,
            overall=overall,
            best_overall=best_overall,
            potential=potential,
            market_value=_money_string(value),
            wage=_money_string(wage),
            release_clause=_money_string(release_clause),
        ))

        attack_factor = {"GK": 0.01, "DEF": 0.15, "MID": 0.5, "ATT": 1.0}[role]
        games = float(np.clip(round(rng.normal(26, 8)), 3, 38))
        scoring = float(rng.poisson(attack_factor * max(quality - 52, 2) * 0.3 * games / 38))
        assists = float(rng.poisson((0.4 + attack_factor) * max(quality - 52, 2) * 0.12 * games / 38))
        shooting = round(scoring * float(rng.uniform(2.8, 5.2)) + float(rng.uniform(0, 8)), 1)
        whoscored_rows.append(RawWhoscoredRow(
            player_name=name,
            club=club.name,
            scoring_point=scoring,
            assist_point=assists,
            goal_point=scoring + assists,
            shooting=shooting,
            effective_shooting=round(shooting * float(rng.uniform(0.28, 0.55)), 1),
            personal_score_ranking=int(rng.integers(1, 21)),
            corner_kick=round(float(rng.uniform(0, 40) * attack_factor), 1),
            penalty_kick=float(rng.poisson(0.8 * attack_factor)),
            foul=round(float(rng.uniform(2, 40)), 1),
            offside=round(float(rng.uniform(0, 20) * attack_factor), 1),
            yellow_card=int(rng.integers(0, 11)),
            red_card=int(rng.poisson(0.2)),
            games_played=games,
            **club.record,
        ))
    return sofifa_rows, whoscored_rows
