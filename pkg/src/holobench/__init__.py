"""Systematic-error sensitivity of holonomic versus dynamical single-qubit gates."""

from .holonomic import LambdaGateSpec, SystematicError
from .dynamical import GateSequence, RabiGateSpec
from .qmath import BlochAngles, NumericInvariantError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "BlochAngles",
    "GateSequence",
    "LambdaGateSpec",
    "NumericInvariantError",
    "RabiGateSpec",
    "SystematicError",
    "ValidationError",
]
