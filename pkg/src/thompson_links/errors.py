"""Exception types shared across the package."""


class ThompsonError(ValueError):
    """Domain error: malformed element, violated precondition, bad input."""


class ParseError(ThompsonError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size budget."""
