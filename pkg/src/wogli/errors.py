"""Exception hierarchy. Every error carries a stable machine-parseable code."""


class WogliError(Exception):
    """Base for all data and validation failures (CLI exit code 2)."""

    code = "error"


class LexiconError(WogliError):
    """Lexicon document cannot be parsed or breaks a load-time constraint."""

    code = "lexicon"


class MorphologyError(WogliError):
    """Requested form does not exist in the paradigm (e.g. indefinite plural)."""

    code = "morphology"


class ExhaustionError(WogliError):
    """More distinct premises requested than a pattern's lexicalization space holds."""

    code = "exhausted"


class ConstraintError(WogliError):
    """A sampling plan constraint could not be satisfied within the retry budget."""

    code = "constraint"


class DataFormatError(WogliError):
    """Malformed dataset, prediction, or training file."""

    code = "format"


class PredictionJoinError(WogliError):
    """Predictions do not line up with the gold records they are joined against."""

    code = "predictions"
