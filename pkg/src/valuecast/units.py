"""Unit normalization for the raw text fields: height, weight, money."""

from __future__ import annotations

import math
import re

from .exceptions import BadHeight, BadMoney, BadWeight

LBS_PER_KG = 0.45359237
CM_PER_INCH = 2.54

_FEET_IN = re.compile(r"^\s*(\d+)'\s*(\d{1,2})\"?\s*$")
_CM = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*cm\s*$", re.IGNORECASE)
_LBS = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*lbs\s*$", re.IGNORECASE)
_KG = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*kg\s*$", re.IGNORECASE)
_EUR = re.compile(r"^\s*€\s*(\d+(?:\.\d+)?)\s*([MK]?)\s*$", re.IGNORECASE)


def round_half_up(value: float, decimals: int = 0) -> float:
    """Round with ties going up (toward +inf), not banker's rounding."""
    scale = 10 ** decimals
    return math.floor(value * scale + 0.5) / scale


def convert_height(raw: str) -> float:
    """Normalize a height string to centimeters, 2 decimals.

    Accepts the feet'inches" form (e.g. 6'0") or an explicit "<n>cm".
    """
    m = _FEET_IN.match(raw)
    if m:
        feet, inches = int(m.group(1)), int(m.group(2))
        if inches >= 12 or (feet == 0 and inches == 0):
            raise BadHeight(f"unparseable height {raw!r}")
        return round_half_up((feet * 12 + inches) * CM_PER_INCH, 2)
    m = _CM.match(raw)
    if m:
        cm = float(m.group(1))
        if cm <= 0:
            raise BadHeight(f"nonphysical height {raw!r}")
        return round_half_up(cm, 2)
    raise BadHeight(f"unparseable height {raw!r}")


def convert_weight(raw: str) -> float:
    """Normalize a weight string to kilograms, 2 decimals."""
    m = _LBS.match(raw)
    if m:
        lbs = float(m.group(1))
        if lbs <= 0:
            raise BadWeight(f"nonphysical weight {raw!r}")
        return round_half_up(lbs * LBS_PER_KG, 2)
    m = _KG.match(raw)
    if m:
        kg = float(m.group(1))
        if kg <= 0:
            raise BadWeight(f"nonphysical weight {raw!r}")
        return round_half_up(kg, 2)
    raise BadWeight(f"unparseable weight {raw!r}")


def compute_bmi(height_cm: float, weight_kg: float) -> float:
    """Body mass index kg/m^2, 2 decimals."""
    if height_cm <= 0:
        raise BadHeight(f"nonphysical height {height_cm}")
    meters = height_cm / 100.0
    return round_half_up(weight_kg / (meters * meters), 2)


def unify_monetary(raw: str) -> float:
    """Normalize a euro amount string to thousands of euros (k€).

    "€<x>M" scales by 1000, "€<x>K" is already k€, bare "€<x>" divides by 1000.
    """
    m = _EUR.match(raw)
    if not m:
        raise BadMoney(f"unparseable monetary value {raw!r}")
    amount = float(m.group(1))
    unit = m.group(2).upper()
    if unit == "M":
        return amount * 1000.0
    if unit == "K":
        return amount
    return amount / 1000.0
