"""Exception types raised across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ConfigError(ValueError):
    """Invalid simulator or sweep configuration."""


class FleetParseError(ValueError):
    """A fleet CSV could not be parsed.

    ``row`` is the 1-based data row (header excluded), or 0 for header problems.
    """

    def __init__(self, message: str, row: int = 0):
        super().__init__(f"row {row}: {message}" if row else message)
        self.row = row


class OracleHorizonError(RuntimeError):
    """The oracle reached its horizon while a vehicle was still moving."""
