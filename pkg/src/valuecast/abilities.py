"""Composite ability attributes computed from the 35 base abilities.

Averaged composites (PAC..PHY) round half-up to integers so they present on
the same 1..99 integer scale as the base abilities; summed composites stay
exact integers. The DEF composite uses marking + standing tackle + strength;
"tackling" is read as the standing tackle attribute.
"""

from __future__ import annotations

from dataclasses import dataclass

from .records import ABILITY_NAMES, PlayerRecord


@dataclass(frozen=True)
class CalculatedAbilities:
    PAC: int
    SHO: int
    PAS: int
    DRI: int
    DEF: int
    PHY: int
    attacking: int
    skill: int
    movement: int
    power: int
    defending: int
    mentality: int
    goalkeeping: int
    base_stats: int
    total_stats: int
    growth: int


# integer half-up division: _avg2 and _avg3 never leave 1..99 for 1..99 inputs

def _avg2(a: int, b: int) -> int:
    return (a + b + 1) // 2


def _avg3(a: int, b: int, c: int) -> int:
    s = a + b + c
    return (2 * s + 3) // 6


CALCULATED_ABILITY_NAMES = (
    "PAC", "SHO", "PAS", "DRI", "DEF", "PHY",
    "attacking", "skill", "movement", "power", "defending", "mentality",
    "goalkeeping", "base_stats", "total_stats", "growth",
)


def calc_abilities(record: PlayerRecord) -> CalculatedAbilities:
    """Apply every composite-attribute formula to one player record."""
    ab = record.abilities
    pac = _avg2(ab["sprint_speed"], ab["acceleration"])
    sho = _avg3(ab["finishing"], ab["long_shots"], ab["shot_power"])
    pas = _avg3(ab["crossing"], ab["short_passing"], ab["long_passing"])
    dri = _avg3(ab["ball_control"], ab["agility"], ab["balance"])
    deff = _avg3(ab["marking"], ab["standing_tackle"], ab["strength"])
    phy = _avg3(ab["strength"], ab["stamina"], ab["jumping"])
    attacking = (
        ab["crossing"] + ab["finishing"] + ab["heading_accuracy"]
        + ab["short_passing"] + ab["volleys"]
    )
    skill = (
        ab["dribbling"] + ab["curve"] + ab["fk_accuracy"]
        + ab["long_passing"] + ab["ball_control"]
    )
    movement = (
        ab["acceleration"] + ab["agility"] + ab["sprint_speed"]
        + ab["reactions"] + ab["balance"]
    )
    power = (
        ab["shot_power"] + ab["jumping"] + ab["stamina"]
        + ab["strength"] + ab["long_shots"]
    )
    defending = ab["marking"] + ab["sliding_tackle"] + ab["standing_tackle"]
    mentality = (
        ab["aggression"] + ab["reactions"] + ab["positioning"]
        + ab["interceptions"] + ab["vision"] + ab["composure"]
    )
    goalkeeping = (
        ab["gk_positioning"] + ab["gk_diving"] + ab["gk_handling"]
        + ab["gk_kicking"] + ab["gk_reflexes"]
    )
    base_stats = pac + sho + pas + dri + deff + phy
    total_stats = sum(ab[name] for name in ABILITY_NAMES)
    growth = record.potential - record.overall
    return CalculatedAbilities(
        PAC=pac, SHO=sho, PAS=pas, DRI=dri, DEF=deff, PHY=phy,
        attacking=attacking, skill=skill, movement=movement, power=power,
        defending=defending, mentality=mentality, goalkeeping=goalkeeping,
        base_stats=base_stats, total_stats=total_stats, growth=growth,
    )
