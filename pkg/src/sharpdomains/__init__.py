"""Sharp elements, intrinsic apartness and strong maximality in continuous
dcpos presented by abstract bases, with checkable witnesses."""
from . import basis, constructions, domains, ideal, separation
from .basis import BasisDescriptor, validate_basis
from .errors import (CapabilityMissing, ConstructionError, DomainError, FuelExhausted,
                     InvariantViolation, ParseError, PreconditionViolation,
                     ValidationError)
from .ideal import IdealElement, NegativeOracle, member, principal

__version__ = "0.1.0"

__all__ = [
    "basis", "constructions", "domains", "ideal", "separation",
    "BasisDescriptor", "validate_basis", "IdealElement", "NegativeOracle",
    "member", "principal", "DomainError", "CapabilityMissing", "ConstructionError",
    "FuelExhausted", "InvariantViolation", "ParseError", "PreconditionViolation",
    "ValidationError",
]
