from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .multivector import MultiVector
from .surface import Classification

NOT_APPLICABLE = "not applicable"


class Conclusion(str, Enum):
    NONZERO_DETECTED_BY_TAU = "NONZERO_DETECTED_BY_TAU"
    IN_KER_TAU_NONZERO_HOMOLOGY = "IN_KER_TAU_NONZERO_HOMOLOGY"
    IN_KER_TAU_UNDETECTED = "IN_KER_TAU_UNDETECTED"
    UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class Certificate:
    """
    Every closed-form invariant of one configuration's cycle, plus the verdict.

    A value of None means the invariant is not applicable; the matching *_note
    says why.

    Rules:
    - IN_KER_TAU_NONZERO_HOMOLOGY needs tau == 0 and taujstar != 0.
    - NONZERO_DETECTED_BY_TAU needs tau != 0.
    - UNDETERMINED is used when tau itself is not applicable (empty cycle).
    """

    name: str
    g: int
    cycle: Tuple[str, ...]
    classification: Classification
    tau_value: Optional[MultiVector]
    gysin_value: Optional[MultiVector]
    taujstar_value: Optional[MultiVector]
    conclusion: Conclusion
    tau_note: str = ""
    gysin_note: str = ""
    taujstar_note: str = ""
    notes: Tuple[str, ...] = ()


class ComparisonLine(str, Enum):
    EQUAL_TAU = "EQUAL_TAU"
    DIFFER_TAU = "DIFFER_TAU"
    TAU_NOT_APPLICABLE = "TAU_NOT_APPLICABLE"
    EQUAL_GYSIN = "EQUAL_GYSIN"
    DIFFER_GYSIN = "DIFFER_GYSIN"
    GYSIN_NOT_APPLICABLE = "GYSIN_NOT_APPLICABLE"
    EQUAL_TAUJSTAR = "EQUAL_TAUJSTAR"
    DIFFER_TAUJSTAR = "DIFFER_TAUJSTAR"
    TAUJSTAR_NOT_APPLICABLE = "TAUJSTAR_NOT_APPLICABLE"


@dataclass(frozen=True)
class Comparison:
    """Side-by-side check of two certificates (same tau, different Gysin values, ...)."""

    first: Certificate
    second: Certificate
    lines: Tuple[ComparisonLine, ...] = field(default=())

    @property
    def equal_tau(self) -> bool:
        return ComparisonLine.EQUAL_TAU in self.lines

    @property
    def differ_gysin(self) -> bool:
        return ComparisonLine.DIFFER_GYSIN in self.lines

    def verdicts(self) -> List[str]:
        return [line.value for line in self.lines]
