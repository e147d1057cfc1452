"""Exact invariant calculus for iterated torus knots in the standard contact 3-sphere."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    InternalInvariantError,
    InvalidSlopeError,
    ItkError,
    ParseError,
    UnsupportedRegimeError,
    ValidationError,
)
from .knots import CablingPair, Frame, IteratedTorusKnot, parse_knot, validate
from .slopes import Slope, UnimodularMap, UnreducedSlope

__all__ = [
    "CablingPair",
    "DomainError",
    "Frame",
    "InternalInvariantError",
    "InvalidSlopeError",
    "ItkError",
    "IteratedTorusKnot",
    "ParseError",
    "Slope",
    "UnimodularMap",
    "UnreducedSlope",
    "UnsupportedRegimeError",
    "ValidationError",
    "parse_knot",
    "validate",
]
