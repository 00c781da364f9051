"""Exception types shared across the package."""


class CapacityError(ValueError):
    """An input exceeds a configured size limit."""


class IncompleteDataError(ValueError):
    """Required eigenvalue / weight data is missing from a dataset."""


class DatasetParseError(ValueError):
    """Malformed maass-v1 input; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InsufficientCutoffError(ValueError):
    """A truncation parameter is too small for the requested window."""
