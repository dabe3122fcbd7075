"""Exception types shared across the package."""


class OmegaError(Exception):
    """Base class for all validation and dimension errors."""


class DimensionError(OmegaError):
    """A dimension or truncation constraint was violated."""


class SchemeError(OmegaError):
    """A pasting-scheme table failed validation; ``index`` names the column."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DiagramError(OmegaError):
    """A labelled pasting diagram failed validation; ``position`` locates it."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ArityError(OmegaError):
    """An instruction was applied to arguments of the wrong shape."""


class TableError(OmegaError):
    """A strict category table or functor failed validation."""


class PaddingError(OmegaError):
    """A padding tower failed a typing check; ``stage`` names the level."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class UnsupportedEvalError(OmegaError):
    """Evaluation requested on a realization that does not support it."""


class ParseError(OmegaError):
    """Bad input text; ``position`` is the offending token offset."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
