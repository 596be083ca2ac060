class WalkError(Exception):
    """Base class for errors raised by parrondo_walk."""


class InvalidArgumentError(WalkError, ValueError):
    pass


class CapacityError(WalkError, RuntimeError):
    """Raised when a shift would push amplitude off the finite lattice."""


class SingularInputError(WalkError, ZeroDivisionError):
    pass


class NormError(WalkError, RuntimeError):
    pass


class ConfigError(InvalidArgumentError):
    """Invalid experiment configuration; ``key`` names the offending entry."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
