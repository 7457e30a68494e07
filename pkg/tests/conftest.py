import numpy as np
import pytest

from valuecast.records import ABILITY_NAMES, PlayerRecord


def make_record(abilities=None, overall=70, potential=75, **overrides) -> PlayerRecord:
    """A complete, valid record with every field defaulted."""
    base_abilities = {name: 50 for name in ABILITY_NAMES}
    if abilities:
        base_abilities.update(abilities)
    fields = dict(
        name="Test Player",
        club="Test Club",
        league="Premier League",
        nationality="Brazil",
        continent="America",
        age=24,
        height_cm=182.88,
        weight_kg=75.0,
        preferred_foot="Right",
        international_reputation=2,
        weak_foot=3,
        skill_moves=3,
        attacking_work_rate="High",
        defensive_work_rate="Medium",
        positions=("LM", "LW", "CF"),
        best_position="LM",
        abilities=base_abilities,
        overall=overall,
        best_overall=min(overall + 1, 99),
        potential=potential,
        market_value_keur=1500.0,
        wage_keur=30.0,
        release_clause_keur=2500.0,
        goal_acquisition=80.0,
        goal_against=30.0,
        goal_difference=50.0,
        victory_point=85.0,
        win=27,
        draw=4,
        lose=7,
        team_standing=1,
        scoring_point=10.0,
        assist_point=5.0,
        goal_point=15.0,
        shooting=60.0,
        effective_shooting=25.0,
        personal_score_ranking=4,
        corner_kick=12.0,
        penalty_kick=2.0,
        foul=20.0,
        offside=8.0,
        yellow_card=3,
        red_card=0,
        games_played=30.0,
    )
    fields.update(overrides)
    return PlayerRecord(**fields)


@pytest.fixture
def record():
    return make_record()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
