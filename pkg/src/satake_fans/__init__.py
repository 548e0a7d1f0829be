"""Exact combinatorics of fans, seminorms and weight embeddings on apartments."""

from .rootsys import RootDatum, build_root_datum
from .cones import RationalCone
from .fans import Fan, build_fan_Ft
from .weights import HighestWeight, weight_system
from .seminorms import DiagSeminorm, LogAffineSequence, SeminormClass, classify_sequence

__all__ = [
    "DiagSeminorm",
    "Fan",
    "HighestWeight",
    "LogAffineSequence",
    "RationalCone",
    "RootDatum",
    "SeminormClass",
    "build_fan_Ft",
    "build_root_datum",
    "classify_sequence",
    "weight_system",
]

__version__ = "0.1.0"
