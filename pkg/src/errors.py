"""Exceptions raised by the solver."""

from typing import List, Optional


class EmbeddingError(ValueError):
    """Base class for all solver errors."""


class InvalidChromosomeError(EmbeddingError):
    """Order is not a permutation, or does not fit the instance."""


class InstanceFormatError(EmbeddingError):
    """Malformed instance or solution text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInstanceError(EmbeddingError):
    """Instance violates one or more invariants."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class GenerationError(EmbeddingError):
    """Random generation exhausted its attempt budget."""


class ConfigError(EmbeddingError):
    """Genetic algorithm configuration is invalid."""


class OracleRangeError(EmbeddingError):
    """Instance too large for exhaustive enumeration."""
