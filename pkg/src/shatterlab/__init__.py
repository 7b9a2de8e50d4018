"""Exact combinatorics of shatter functions.

Set systems on labelled ground sets, shatter values and VC dimension,
compression to simplicial complexes, balanced rooted d-trees of prescribed
rational density, seeded random-complex experiments, and closed-form bounds.
"""

from shatterlab.errors import (
    EmptyDomainError,
    InvalidArgumentError,
    ResourceLimitError,
)

__all__ = [
    "EmptyDomainError",
    "InvalidArgumentError",
    "ResourceLimitError",
]

__version__ = "0.1.0"
