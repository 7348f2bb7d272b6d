# app/models/__init__.py
# Central import surface for the value types.
# Everything here is immutable; services build and combine these.

# Exterior algebra
from .basis import BasisLabel, LabelKind, LabeledSpace, Monomial, NestedSpace, SymplecticSpace
from .multivector import MultiVector

# Symplectic group
from .sp_matrix import SpMatrix, compose

# Surfaces and cycles
from .surface import (
    BoundingPair,
    Classification,
    Configuration,
    Curve,
    GeneratorKind,
    Region,
    SeparatingTwist,
    Verdict,
    Violation,
    ViolationKind,
)

# Results
from .certificate import Certificate, Comparison, ComparisonLine, Conclusion
from .report import CheckRecord, CheckResult, CheckStatus, RunReport

__all__ = [
    "BasisLabel",
    "LabelKind",
    "LabeledSpace",
    "Monomial",
    "NestedSpace",
    "SymplecticSpace",
    "MultiVector",
    "SpMatrix",
    "compose",
    "BoundingPair",
    "Classification",
    "Configuration",
    "Curve",
    "GeneratorKind",
    "Region",
    "SeparatingTwist",
    "Verdict",
    "Violation",
    "ViolationKind",
    "Certificate",
    "Comparison",
    "ComparisonLine",
    "Conclusion",
    "CheckRecord",
    "CheckResult",
    "CheckStatus",
    "RunReport",
]
