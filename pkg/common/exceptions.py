"""
Exception hierarchy shared by the algebra and stochastic apps.

Commands translate these into ``CommandError`` with the exit code the CLI
contract prescribes: usage-type errors exit 2, failed verifications exit 1.
"""


class BranchedError(Exception):
    """Base class for every error raised by this project."""


class ExpressionParseError(BranchedError):
    """Raised when expression text cannot be parsed."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownLabelError(BranchedError):
    """Raised when a vertex label is not part of the session alphabet."""

    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"Unknown label {symbol!r}")


class BoundExceededError(BranchedError):
    """Raised when a computation would exceed the truncation bound."""

    def __init__(self, weight: int, bound: int):
        self.weight = weight
        self.bound = bound
        super().__init__(f"Weight {weight} exceeds the truncation bound {bound}")


class AlphabetMismatchError(BranchedError):
    """Raised when paired elements use labels from different alphabets."""


class ConventionError(BranchedError):
    """A rank defect or singular solve: the sign conventions are inconsistent."""


class CharacterError(BranchedError):
    """Raised for characters that are incomplete or not multiplicative."""


class GridError(BranchedError):
    """Raised for invalid grids, off-grid endpoints or sampler failures."""


class ConfigurationError(BranchedError):
    """Raised for invalid run configuration."""
