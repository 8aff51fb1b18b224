"""Exact analysis of preference relations given by sign cones over Q^n."""

from .conemodel import RelationVerdict, SignCone, build, load, load_file, relate, validate_partial_preference
from .errors import (
    CapExceeded,
    DimensionMismatch,
    InvalidCortege,
    InvariantViolation,
    ParseError,
    PrefConeError,
    PreconditionError,
)
from .exactnum import Subspace, parse_rational, parse_vector
from .extension import WitnessFamily, extend_regular, separate, witness_non_preference
from .steplin import Cortege, StepLinearFn, check_represents, evaluate, validate_cortege
from .structure import ComponentLattice, components, join, lineality, majorizes
from .weakpref import analyze_weak, extract_cortege

__all__ = [
    "CapExceeded",
    "ComponentLattice",
    "Cortege",
    "DimensionMismatch",
    "InvalidCortege",
    "InvariantViolation",
    "ParseError",
    "PrefConeError",
    "PreconditionError",
    "RelationVerdict",
    "SignCone",
    "StepLinearFn",
    "Subspace",
    "WitnessFamily",
    "analyze_weak",
    "build",
    "check_represents",
    "components",
    "evaluate",
    "extend_regular",
    "extract_cortege",
    "join",
    "lineality",
    "load",
    "load_file",
    "majorizes",
    "parse_rational",
    "parse_vector",
    "relate",
    "separate",
    "validate_cortege",
    "validate_partial_preference",
    "witness_non_preference",
]
