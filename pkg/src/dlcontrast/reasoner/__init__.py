"""EL with bottom: normalization and consequence-based saturation."""
from .core import (
    Closure,
    ELReasoner,
    InconsistentKB,
    entails,
    instances,
    is_consistent,
    reasoner_for,
    saturate,
)
from .normalize import NormalizedKB, normalize, surrogate

__all__ = [
    "Closure",
    "ELReasoner",
    "InconsistentKB",
    "NormalizedKB",
    "entails",
    "instances",
    "is_consistent",
    "normalize",
    "reasoner_for",
    "saturate",
    "surrogate",
]
