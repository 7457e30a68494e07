"""Exception hierarchy shared by all valuecast modules."""


class ValuecastError(Exception):
    """Base class for all errors raised by this package."""


# --- ingestion ---------------------------------------------------------------

class IngestError(ValuecastError):
    pass


class MissingColumn(IngestError):
    """CSV header does not contain a required column."""


class RowError(IngestError):
    """A single data row is malformed; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadOrdinal(RowError):
    pass


class BadAbility(RowError):
    pass


class BadPosition(RowError):
    pass


class InconsistentRow(RowError):
    """A derived-field identity does not hold (corrupt input, row rejected)."""


class DuplicateKey(IngestError):
    pass


class UnknownCountry(IngestError):
    pass


# --- feature engineering ------------------------------------------------------

class BadHeight(ValuecastError):
    pass


class BadWeight(ValuecastError):
    pass


class BadMoney(ValuecastError):
    pass


class EmptyDataset(ValuecastError):
    pass


class ZeroVariance(ValuecastError):
    pass


# --- models -------------------------------------------------------------------

class SingularDesign(ValuecastError):
    """Rank-deficient design matrix in a normal-equation solve."""


class NotPositiveDefinite(ValuecastError):
    """Gram matrix plus ridge failed the Cholesky factorization."""


class SchemaMismatch(ValuecastError):
    """Prediction input does not match the column schema seen at fit time."""


class MissingCover(ValuecastError):
    """Tree nodes lack the cover statistics required by TreeSHAP."""


class TooManyFeatures(ValuecastError):
    """Brute-force Shapley enumeration refused (exponential cost)."""


# --- evaluation / HPO -----------------------------------------------------------

class LengthMismatch(ValuecastError):
    pass


class TooSmall(ValuecastError):
    """A split or fold request cannot be satisfied by the data size."""


class TooFewTrials(ValuecastError):
    pass


class ObjectiveFailure(ValuecastError):
    """An HPO objective raised; the trial is marked failed."""
