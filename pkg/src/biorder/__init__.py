"""Exact computation with bi-orderings of the free group F2."""

from biorder.errors import (
    BudgetExhausted,
    EmptySupport,
    IdentityInput,
    ImmediateClash,
    LengthExceeded,
    NotFound,
    NotPositive,
    PreconditionFailed,
    TruncationExceeded,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "EmptySupport",
    "IdentityInput",
    "ImmediateClash",
    "LengthExceeded",
    "NotFound",
    "NotPositive",
    "PreconditionFailed",
    "TruncationExceeded",
]
