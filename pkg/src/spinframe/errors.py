"""Exceptions shared across the package."""


class ToleranceError(RuntimeError):
    """A numerical check missed its tolerance; ``achieved`` holds the measured error."""

    def __init__(self, message: str, achieved: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved
