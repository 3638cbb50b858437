"""Shared exception types."""


class GuardExceeded(ValueError):
    """A desk-scale size or range guard was exceeded."""


class BudgetExceeded(ValueError):
    """A search would require more assignments than the configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"search requires {required} assignments, budget is {budget}")
        self.required = required
        self.budget = budget


class ParseError(ValueError):
    """Malformed input text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
