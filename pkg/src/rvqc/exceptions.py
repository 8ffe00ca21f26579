class ResourceLimitError(ValueError):
    """A problem size exceeds what the simulator is set up to handle."""


class ConfigError(ValueError):
    """An experiment file is malformed or out of range."""


class NumericalError(ArithmeticError):
    """Non-finite values or states that left the physical domain."""
