"""Country to continent lookup backed by the bundled data file."""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources

from .exceptions import UnknownCountry


@lru_cache(maxsize=1)
def country_table() -> dict[str, str]:
    path = resources.files("valuecast.data").joinpath("countries.csv")
    with path.open(encoding="utf-8", newline="") as fh:
        return {row["country"]: row["continent"] for row in csv.DictReader(fh)}


def map_continent(nationality: str) -> str:
    """Return one of the five continents for a country name.

    Raises UnknownCountry when the name is not in the bundled table.
    """
    try:
        return country_table()[nationality]
    except KeyError:
        raise UnknownCountry(f"no continent mapping for country {nationality!r}") from None
