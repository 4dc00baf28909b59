class LieCodazziError(Exception):
    """Base class for every error raised by the engine."""


class UsageError(LieCodazziError):
    """Malformed input or an invalid combination of options."""


class ConstraintViolation(LieCodazziError):
    """A parameter choice or solution family conflicts with a family constraint."""

    def __init__(self, polynomial: str, reason: str):
        self.polynomial = polynomial
        self.reason = reason
        super().__init__(f"constraint violated: {polynomial} ({reason})")


class SamplerStarvation(LieCodazziError):
    """No admissible rational point was found within the attempt budget."""

    def __init__(self, attempts: int, description: str):
        self.attempts = attempts
        self.description = description
        super().__init__(
            f"sampler starved after {attempts} attempts: {description}"
        )
