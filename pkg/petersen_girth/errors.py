from typing import Any, Optional


class PetersenError(Exception):
    """Base class for every error raised by petersen_girth."""


class InvalidParameterError(PetersenError, ValueError):
    """A numeric parameter is outside the domain of a construction."""


class InvalidInputError(PetersenError, ValueError):
    """A structured input (cycle, vertex map, edge-list text) is malformed."""


class DomainError(PetersenError, ValueError):
    """The input lies outside the range where a formula or construction applies."""


class VerificationError(PetersenError, RuntimeError):
    """A construction that should always verify failed its verifier.

    `witness` carries whatever the verifier reported (usually the first
    failing edge) so the instance can be reproduced.
    """

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class SearchBudgetExhausted(PetersenError, RuntimeError):
    """A bounded search stopped before it could decide its question."""

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message)
        self.partial = partial
