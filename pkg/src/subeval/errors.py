"""Exception hierarchy shared by all subeval modules."""


class SubevalError(Exception):
    """Base class for all toolkit errors."""


class FormatError(SubevalError):
    """Malformed input file (marked text, SRT, CoNLL-U, Pharaoh, config)."""


class DataError(SubevalError):
    """Structurally valid input that violates a metric precondition."""
