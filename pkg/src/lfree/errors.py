"""Exception hierarchy for lfree."""


class LfreeError(Exception):
    """Base class for every error raised by lfree."""


class EquationSyntaxError(LfreeError, ValueError):
    """An equation string does not match the grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        self.reason = message
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class DomainError(LfreeError, ValueError):
    """An operation was called outside its hypotheses."""

    def __init__(self, message: str, clause: str | None = None):
        self.clause = clause
        super().__init__(message if clause is None else f"{message} [{clause}]")


class DensityUnknownError(DomainError):
    """No closed form for the largest L-free set is known for this equation."""


class CapExceededError(DomainError):
    """A brute-force oracle was asked for n beyond its configured cap."""

    def __init__(self, what: str, n: int, cap: int):
        self.what = what
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: n={n} exceeds the configured cap {cap}")


class UnknownSuiteError(LfreeError, KeyError):
    """A verification suite name is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown suite"


class ConfigError(LfreeError):
    """Configuration file or environment value is invalid."""


class GridSpecError(LfreeError, ValueError):
    """A --grid specification could not be parsed."""
