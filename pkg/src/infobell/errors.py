"""Semantic exception hierarchy. Public functions never raise bare ValueError."""


class InfobellError(Exception):
    """Base error for this package."""


class DomainError(InfobellError, ValueError):
    """An argument is outside its documented domain."""


class EmptyExperiment(InfobellError):
    """An operation that needs outcomes received an empty matrix."""


class ProvenanceMismatch(InfobellError):
    """Tables passed together were not derived from the same matrix/filter."""


class DegenerateIndex(InfobellError):
    """A campaign index has a zero or undefined denominator."""


class TooLarge(InfobellError):
    """Exhaustive enumeration would exceed the sample-space guard."""


class EmptyCampaign(InfobellError):
    """A statistic over campaign results received no results."""


class NoPlanWithinBudget(InfobellError):
    """No (N, k0) pair satisfies both decision constraints within n_max."""


class BracketError(InfobellError):
    """Root bracketing failed: no sign change over the search interval."""


class ParseError(InfobellError):
    """Malformed session CSV row; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ShapeError(InfobellError):
    """Experiments in one session do not share a common outcome count."""
