from .errors import (
    DomainError,
    InvalidInputError,
    InvalidParameterError,
    PetersenError,
    SearchBudgetExhausted,
    VerificationError,
)
from .graph_core import SimpleGraph
from .petersen import GPParams, build_pb, build_petersen

__version__ = "1.0.0"
