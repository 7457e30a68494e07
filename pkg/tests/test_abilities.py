import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from valuecast.abilities import calc_abilities
from valuecast.records import ABILITY_NAMES

from conftest import make_record

RANGES = {
    "PAC": (1, 99), "SHO": (1, 99), "PAS": (1, 99), "DRI": (1, 99),
    "DEF": (1, 99), "PHY": (1, 99),
    "attacking": (5, 495), "skill": (5, 495), "movement": (5, 495),
    "power": (5, 495), "goalkeeping": (5, 495),
    "defending": (3, 297),
    "mentality": (6, 594),
    "base_stats": (6, 594),
    # the attainable total range; the published 39..3500 is looser at the top
    # and wrong at the degenerate bottom (35 all-ones)
    "total_stats": (35, 3465),
    "growth": (0, 98),
}


def test_symmetric_pace():
    r = make_record(abilities={"sprint_speed": 50, "acceleration": 50})
    assert calc_abilities(r).PAC == 50


def test_shooting_formula():
    r = make_record(abilities={"finishing": 90, "long_shots": 80, "shot_power": 85})
    assert calc_abilities(r).SHO == 85


def test_all_99_totals():
    r = make_record(abilities={name: 99 for name in ABILITY_NAMES})
    calc = calc_abilities(r)
    assert calc.total_stats == 3465
    assert 39 <= calc.total_stats <= 3500


def test_half_up_rounding():
    r = make_record(abilities={"sprint_speed": 50, "acceleration": 51})
    assert calc_abilities(r).PAC == 51  # 50.5 rounds up


def test_base_stats_identity(record):
    calc = calc_abilities(record)
    assert calc.base_stats == calc.PAC + calc.SHO + calc.PAS + calc.DRI + calc.DEF + calc.PHY


def test_growth_identity():
    r = make_record(overall=70, potential=78)
    assert calc_abilities(r).growth == 8


profile = st.fixed_dictionaries({name: st.integers(1, 99) for name in ABILITY_NAMES})


@settings(max_examples=120, deadline=None)
@given(abilities=profile, overall=st.integers(1, 99), growth=st.integers(0, 30))
def test_ranges_and_identities_hold(abilities, overall, growth):
    potential = min(overall + growth, 99)
    r = make_record(abilities=abilities, overall=overall, potential=potential)
    calc = calc_abilities(r)
    for name, (lo, hi) in RANGES.items():
        value = getattr(calc, name)
        assert lo <= value <= hi, f"{name}={value} outside [{lo}, {hi}]"
    assert calc.base_stats == calc.PAC + calc.SHO + calc.PAS + calc.DRI + calc.DEF + calc.PHY
    assert calc.growth == potential - overall >= 0
    assert calc.total_stats == sum(abilities.values())
