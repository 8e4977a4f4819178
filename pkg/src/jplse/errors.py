class InvalidInput(ValueError):
    """Raised when an input violates an operation's preconditions.

    The CLI maps this to exit code 2 (validation refusal).
    """
