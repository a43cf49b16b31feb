"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes: UsageError -> 1,
DataError (and subclasses) -> 2, NumericError -> 3.
"""


class UsageError(ValueError):
    """The caller asked for something invalid (bad arguments, dimension
    mismatch, unlabeled data where labels are required)."""


class DataError(ValueError):
    """An input file or dataset is malformed."""


class TrainingError(DataError):
    """The training data cannot support fitting (e.g. a single class)."""


class NumericError(ArithmeticError):
    """An optimization diverged or produced non-finite values."""


class ModelFormatError(DataError):
    """A model file is corrupt, truncated, or has the wrong version tag."""
