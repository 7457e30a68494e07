"""Feature matrix construction and correlation screening.

Two encodings are supported. ``onehot`` fully dummy-expands the nominal
fields (the layout the linear models and the level-wise booster consume);
``native`` keeps preferred foot, league, continent and best position as
integer category codes so the leaf-wise booster can split them natively.
The multi-label positions field is multi-hot in both encodings. Column
order is fixed; the expanded widths are pinned as ONEHOT_COLUMN_COUNT and
NATIVE_COLUMN_COUNT.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .abilities import CALCULATED_ABILITY_NAMES, calc_abilities
from .exceptions import EmptyDataset, LengthMismatch, TooSmall, ZeroVariance
from .records import (
    ABILITY_NAMES,
    CONTINENTS,
    FOOT_VALUES,
    LEAGUES,
    POSITION_CODES,
    WHOSCORED_STAT_FIELDS,
    WORK_RATE_LEVELS,
    PlayerRecord,
)
from .units import compute_bmi

TARGET_COLUMN = "market_value_keur"

NUMERIC_COLUMNS: tuple[str, ...] = (
    ("age", "height_cm", "weight_kg", "bmi",
     "international_reputation", "weak_foot", "skill_moves",
     "attacking_work_rate", "defensive_work_rate")
    + ABILITY_NAMES
    + ("overall", "best_overall", "potential")
    + CALCULATED_ABILITY_NAMES
    + ("wage_keur", "release_clause_keur")
    + WHOSCORED_STAT_FIELDS
)

_FOOT_COLUMNS = tuple(f"foot_{v}" for v in FOOT_VALUES)
_LEAGUE_COLUMNS = tuple("league_" + v.replace(" ", "_") for v in LEAGUES)
_CONTINENT_COLUMNS = tuple(f"continent_{v}" for v in CONTINENTS)
_BEST_POS_COLUMNS = tuple(f"bp_{v}" for v in POSITION_CODES)
_POS_COLUMNS = tuple(f"pos_{v}" for v in POSITION_CODES)

ONEHOT_COLUMNS: tuple[str, ...] = (
    NUMERIC_COLUMNS + _FOOT_COLUMNS + _LEAGUE_COLUMNS + _CONTINENT_COLUMNS
    + _BEST_POS_COLUMNS + _POS_COLUMNS
)
NATIVE_COLUMNS: tuple[str, ...] = (
    NUMERIC_COLUMNS + _POS_COLUMNS
    + ("preferred_foot_code", "league_code", "continent_code", "best_position_code")
)

ONEHOT_COLUMN_COUNT = len(ONEHOT_COLUMNS)    # 152
NATIVE_COLUMN_COUNT = len(NATIVE_COLUMNS)    # 117

NATIVE_CATEGORICAL_COLUMNS: tuple[int, ...] = tuple(
    NATIVE_COLUMNS.index(c)
    for c in ("preferred_foot_code", "league_code", "continent_code", "best_position_code")
)


@dataclass
class FeatureMatrix:
    column_names: tuple[str, ...]
    X: np.ndarray                       # n x p, float64, no NaN
    y: np.ndarray                       # n, market value in k EUR
    categorical_columns: tuple[int, ...] = ()
    encoding: str = "onehot"

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]


def _numeric_values(record: PlayerRecord) -> list[float]:
    calc = calc_abilities(record)
    values = [
        float(record.age),
        record.height_cm,
        record.weight_kg,
        compute_bmi(record.height_cm, record.weight_kg),
        float(record.international_reputation),
        float(record.weak_foot),
        float(record.skill_moves),
        float(WORK_RATE_LEVELS[record.attacking_work_rate]),
        float(WORK_RATE_LEVELS[record.defensive_work_rate]),
    ]
    values += [float(record.abilities[a]) for a in ABILITY_NAMES]
    values += [float(record.overall), float(record.best_overall), float(record.potential)]
    values += [float(getattr(calc, name)) for name in CALCULATED_ABILITY_NAMES]
    values += [record.wage_keur, record.release_clause_keur]
    values += [float(getattr(record, f)) for f in WHOSCORED_STAT_FIELDS]
    return values


def encode_record(record: PlayerRecord, encoding: str = "onehot") -> np.ndarray:
    """Encode one record as a feature row (target excluded)."""
    values = _numeric_values(record)
    pos_hot = [1.0 if code in record.positions else 0.0 for code in POSITION_CODES]
    if encoding == "onehot":
        values += [1.0 if record.preferred_foot == v else 0.0 for v in FOOT_VALUES]
        values += [1.0 if record.league == v else 0.0 for v in LEAGUES]
        values += [1.0 if record.continent == v else 0.0 for v in CONTINENTS]
        values += [1.0 if record.best_position == v else 0.0 for v in POSITION_CODES]
        values += pos_hot
    elif encoding == "native":
        values += pos_hot
        values += [
            float(FOOT_VALUES.index(record.preferred_foot)),
            float(LEAGUES.index(record.league)),
            float(CONTINENTS.index(record.continent)),
            float(POSITION_CODES.index(record.best_position)),
        ]
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    return np.asarray(values, dtype=np.float64)


def decode_categoricals(row: np.ndarray, encoding: str = "onehot") -> dict:
    """Invert the categorical part of an encoded row (used to verify encoding)."""
    names = ONEHOT_COLUMNS if encoding == "onehot" else NATIVE_COLUMNS
    col = {name: row[i] for i, name in enumerate(names)}
    out = {
        "positions": tuple(c for c in POSITION_CODES if col[f"pos_{c}"] == 1.0),
        "attacking_work_rate": [k for k, v in WORK_RATE_LEVELS.items() if v == col["attacking_work_rate"]][0],
        "defensive_work_rate": [k for k, v in WORK_RATE_LEVELS.items() if v == col["defensive_work_rate"]][0],
    }
    if encoding == "onehot":
        out["preferred_foot"] = [v for v in FOOT_VALUES if col[f"foot_{v}"] == 1.0][0]
        out["league"] = [v for v in LEAGUES if col["league_" + v.replace(" ", "_")] == 1.0][0]
        out["continent"] = [v for v in CONTINENTS if col[f"continent_{v}"] == 1.0][0]
        out["best_position"] = [v for v in POSITION_CODES if col[f"bp_{v}"] == 1.0][0]
    else:
        out["preferred_foot"] = FOOT_VALUES[int(col["preferred_foot_code"])]
        out["league"] = LEAGUES[int(col["league_code"])]
        out["continent"] = CONTINENTS[int(col["continent_code"])]
        out["best_position"] = POSITION_CODES[int(col["best_position_code"])]
    return out


def build_matrix(records: list[PlayerRecord], encoding: str = "onehot") -> FeatureMatrix:
    """Assemble the design matrix and target vector from complete records."""
    if not records:
        raise EmptyDataset("cannot build a feature matrix from zero records")
    X = np.stack([encode_record(r, encoding) for r in records])
    y = np.asarray([r.market_value_keur for r in records], dtype=np.float64)
    names = ONEHOT_COLUMNS if encoding == "onehot" else NATIVE_COLUMNS
    cats = NATIVE_CATEGORICAL_COLUMNS if encoding == "native" else ()
    return FeatureMatrix(column_names=names, X=X, y=y, categorical_columns=cats, encoding=encoding)


# --- correlation screening -----------------------------------------------------


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson product-moment correlation coefficient."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"length mismatch: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise TooSmall("pearson needs at least 2 observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.sqrt(xc @ xc)
    sy = np.sqrt(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise ZeroVariance("pearson undefined for a zero-variance input")
    r = float((xc @ yc) / (sx * sy))
    return max(-1.0, min(1.0, r))


def correlation_report(m: FeatureMatrix, threshold: float = 0.4) -> list[tuple[str, float]]:
    """Features whose |r| against the target reaches the threshold, ranked.

    Zero-variance columns carry no signal and are skipped. Ties keep column
    order (stable sort).
    """
    if not 0.0 <= threshold <= 1.01:
        raise ValueError("threshold must lie in [0, 1] (or slightly above to empty the list)")
    rows = []
    for j, name in enumerate(m.column_names):
        try:
            r = pearson(m.X[:, j], m.y)
        except ZeroVariance:
            continue
        if abs(r) >= threshold:
            rows.append((name, r))
    rows.sort(key=lambda item: -abs(item[1]))
    return rows


# --- serialization ---------------------------------------------------------------


def write_matrix_csv(m: FeatureMatrix, path) -> None:
    """Matrix CSV: feature columns in order, target as the final column."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(m.column_names) + [TARGET_COLUMN])
        for i in range(m.n):
            writer.writerow([repr(float(v)) for v in m.X[i]] + [repr(float(m.y[i]))])


def read_matrix_csv(path) -> FeatureMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[-1] != TARGET_COLUMN:
            raise EmptyDataset(f"matrix file must end with the {TARGET_COLUMN} column")
        names = tuple(header[:-1])
        data = [[float(c) for c in row] for row in reader if row]
    if not data:
        raise EmptyDataset("matrix file holds no data rows")
    arr = np.asarray(data, dtype=np.float64)
    if names == NATIVE_COLUMNS:
        cats, encoding = NATIVE_CATEGORICAL_COLUMNS, "native"
    else:
        cats, encoding = (), "onehot"
    return FeatureMatrix(column_names=names, X=arr[:, :-1], y=arr[:, -1],
                         categorical_columns=cats, encoding=encoding)
