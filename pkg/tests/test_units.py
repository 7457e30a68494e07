import pytest

from valuecast.exceptions import BadHeight, BadMoney, BadWeight
from valuecast.units import (
    compute_bmi,
    convert_height,
    convert_weight,
    round_half_up,
    unify_monetary,
)


def test_height_feet_inches():
    assert convert_height("6'0\"") == 182.88
    assert convert_height("5'11\"") == 180.34


def test_height_cm_identity():
    assert convert_height("183cm") == 183.00


@pytest.mark.parametrize("raw", ["", "tall", "6'13\"", "0'0\"", "-5cm"])
def test_height_rejects(raw):
    with pytest.raises(BadHeight):
        convert_height(raw)


def test_weight_lbs():
    assert convert_weight("154lbs") == 69.85


def test_weight_kg_identity():
    assert convert_weight("70kg") == 70.00


def test_weight_rejects_nonphysical():
    with pytest.raises(BadWeight):
        convert_weight("0lbs")
    with pytest.raises(BadWeight):
        convert_weight("heavy")


def test_bmi():
    assert compute_bmi(200.0, 100.0) == 25.00
    assert compute_bmi(182.88, 69.85) == 20.88
    assert compute_bmi(180.0, 80.0) == 24.69


def test_bmi_rejects_zero_height():
    with pytest.raises(BadHeight):
        compute_bmi(0.0, 70.0)


def test_monetary_units():
    assert unify_monetary("€1.5M") == 1500.0
    assert unify_monetary("€500K") == 500.0
    assert unify_monetary("€750") == 0.75


def test_monetary_rejects():
    with pytest.raises(BadMoney):
        unify_monetary("1.5M")
    with pytest.raises(BadMoney):
        unify_monetary("€lots")


def test_round_half_up_ties_go_up():
    assert round_half_up(2.5) == 3
    assert round_half_up(3.5) == 4  # not banker's rounding
    assert round_half_up(0.125, 2) == 0.13
