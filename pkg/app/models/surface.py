from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ..errors import ContractViolation


@dataclass(frozen=True)
class Region:
    """
    A complementary subsurface of the curve system.

    pair_indices are the symplectic pairs (a_m, b_m) carried by the region;
    validation requires len(pair_indices) == genus.
    """

    id: str
    genus: int
    pair_indices: Tuple[int, ...] = ()
    contains_basepoint: bool = False
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class Curve:
    """
    A simple closed curve in standard position.

    class_index m means the curve is homologous to a_m; None marks a separating
    curve (class zero). endpoints are the regions on either side.
    """

    id: str
    class_index: Optional[int]
    endpoints: Tuple[str, str]
    line: Optional[int] = field(default=None, compare=False)

    @property
    def separating(self) -> bool:
        return self.class_index is None


@dataclass(frozen=True)
class BoundingPair:
    id: str
    curve_ids: Tuple[str, str]
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class SeparatingTwist:
    id: str
    curve_id: str
    line: Optional[int] = field(default=None, compare=False)


class GeneratorKind(str, Enum):
    BOUNDING_PAIR = "bp"
    SEPARATING_TWIST = "sep"


@dataclass(frozen=True)
class Configuration:
    """
    A curve configuration on the marked genus-g surface plus one abelian cycle.

    Entities keep their declared order; ids are unique across all entity kinds.
    """

    g: int
    regions: Tuple[Region, ...]
    curves: Tuple[Curve, ...] = ()
    bounding_pairs: Tuple[BoundingPair, ...] = ()
    separating_twists: Tuple[SeparatingTwist, ...] = ()
    cycle: Tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    # -------------------------
    # Lookups
    # -------------------------

    def _index(self) -> Dict[str, object]:
        out: Dict[str, object] = {}
        for group in (self.regions, self.curves, self.bounding_pairs, self.separating_twists):
            for item in group:
                out[item.id] = item
        return out

    def region(self, region_id: str) -> Region:
        for r in self.regions:
            if r.id == region_id:
                return r
        raise ContractViolation(f"no region with id {region_id!r}")

    def curve(self, curve_id: str) -> Curve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise ContractViolation(f"no curve with id {curve_id!r}")

    def bounding_pair(self, bp_id: str) -> BoundingPair:
        for bp in self.bounding_pairs:
            if bp.id == bp_id:
                return bp
        raise ContractViolation(f"no bounding pair with id {bp_id!r}")

    def separating_twist(self, sep_id: str) -> SeparatingTwist:
        for s in self.separating_twists:
            if s.id == sep_id:
                return s
        raise ContractViolation(f"no separating twist with id {sep_id!r}")

    def generator_kind(self, gen_id: str) -> GeneratorKind:
        item = self._index().get(gen_id)
        if isinstance(item, BoundingPair):
            return GeneratorKind.BOUNDING_PAIR
        if isinstance(item, SeparatingTwist):
            return GeneratorKind.SEPARATING_TWIST
        raise ContractViolation(f"{gen_id!r} is not a cycle generator")

    def bp_class(self, bp_id: str) -> int:
        """Class index shared by the pair's curves (taken from the first curve)."""
        first = self.curve(self.bounding_pair(bp_id).curve_ids[0])
        if first.class_index is None:
            raise ContractViolation(f"bounding pair {bp_id!r} uses a separating curve")
        return first.class_index

    @property
    def basepoint_regions(self) -> Tuple[str, ...]:
        return tuple(r.id for r in self.regions if r.contains_basepoint)

    @property
    def basepoint(self) -> str:
        marks = self.basepoint_regions
        if len(marks) != 1:
            raise ContractViolation(f"expected exactly one basepoint region, found {len(marks)}")
        return marks[0]

    @property
    def k(self) -> int:
        return len(self.cycle)

    def label(self) -> str:
        return self.name or f"config(g={self.g})"


class ViolationKind(str, Enum):
    BASEPOINT = "BASEPOINT"
    EULER = "EULER"
    INDEX_RANGE = "INDEX_RANGE"
    INDEX_PARTITION = "INDEX_PARTITION"
    DISCONNECTED = "DISCONNECTED"
    CURVE = "CURVE"
    BOUNDING_PAIR = "BOUNDING_PAIR"
    SEPARATING_TWIST = "SEPARATING_TWIST"
    CYCLE = "CYCLE"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    message: str
    subject: str = ""

    def __str__(self) -> str:
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.kind.value}{where}: {self.message}"


class Verdict(str, Enum):
    TRULY_NESTED = "TRULY_NESTED"
    DEPENDENT_CLASSES = "DEPENDENT_CLASSES"
    NOT_NESTED = "NOT_NESTED"
    HAS_SEPARATING_TWIST = "HAS_SEPARATING_TWIST"


@dataclass(frozen=True)
class Classification:
    """
    Verdict for the distinguished cycle.

    order is only set for TRULY_NESTED: for i < j, order[j] separates the
    basepoint from order[i].
    """

    verdict: Verdict
    order: Tuple[str, ...] = ()

    @property
    def truly_nested(self) -> bool:
        return self.verdict == Verdict.TRULY_NESTED

    def __str__(self) -> str:
        if self.verdict == Verdict.TRULY_NESTED and self.order:
            return f"{self.verdict.value} {'<'.join(self.order)}"
        return self.verdict.value
