from __future__ import annotations

import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..errors import ContractViolation, InvalidConfiguration
from ..models.basis import SymplecticSpace
from ..models.multivector import MultiVector
from ..models.surface import (
    Classification,
    Configuration,
    GeneratorKind,
    Verdict,
    Violation,
    ViolationKind,
)

logger = logging.getLogger(__name__)


# -------------------------
# Region multigraph
# -------------------------

def region_graph(c: Configuration, without: Iterable[str] = ()) -> nx.MultiGraph:
    """
    Regions as nodes, curves as edges keyed by curve id.

    Curves listed in `without` are left out (the cut along those curves).
    """
    skip = set(without)
    graph = nx.MultiGraph()
    for r in c.regions:
        graph.add_node(r.id, genus=r.genus, pairs=r.pair_indices)
    for cv in c.curves:
        if cv.id in skip:
            continue
        left, right = cv.endpoints
        graph.add_edge(left, right, key=cv.id, class_index=cv.class_index)
    return graph


def components_after_cut(c: Configuration, curve_ids: Sequence[str]) -> List[FrozenSet[str]]:
    """Connected region sets after cutting along the given curves, in declared region order."""
    graph = region_graph(c, curve_ids)
    order = {r.id: i for i, r in enumerate(c.regions)}
    comps = [frozenset(comp) for comp in nx.connected_components(graph)]
    return sorted(comps, key=lambda comp: min(order[r] for r in comp))


def _internal_edges(c: Configuration, side: FrozenSet[str], cut: Sequence[str]) -> nx.MultiGraph:
    graph = region_graph(c, cut).subgraph(side)
    return nx.MultiGraph(graph)


def _handle_classes(sub: nx.MultiGraph) -> Set[int]:
    """Classes of curves lying on a cycle of the side's own graph (each such class is one handle)."""
    out: Set[int] = set()
    for u, v, key, data in sub.edges(keys=True, data=True):
        cls = data.get("class_index")
        if cls is None:
            continue
        trial = nx.MultiGraph(sub)
        trial.remove_edge(u, v, key=key)
        if nx.has_path(trial, u, v):
            out.add(cls)
    return out


def side_genus(c: Configuration, side: FrozenSet[str], cut: Sequence[str]) -> int:
    """Genus of a side: region genera plus the cycle rank of the curves inside it."""
    sub = _internal_edges(c, side, cut)
    cycle_rank = sub.number_of_edges() - sub.number_of_nodes() + nx.number_connected_components(sub)
    return sum(c.region(r).genus for r in side) + cycle_rank


def side_pair_indices(c: Configuration, side: FrozenSet[str], cut: Sequence[str]) -> Tuple[int, ...]:
    """Every handle index on the side: region pairs plus classes of inner handle curves."""
    indices: Set[int] = set()
    for r in side:
        indices.update(c.region(r).pair_indices)
    indices.update(_handle_classes(_internal_edges(c, side, cut)))
    return tuple(sorted(indices))


def symplectic_form(g: int, indices: Iterable[int]) -> MultiVector:
    """sum of a_m ^ b_m over the given indices (0 for an empty set)."""
    space = SymplecticSpace(g)
    return MultiVector(space, 2, {(2 * (m - 1), 2 * (m - 1) + 1): 1 for m in indices})


def _is_bridge(c: Configuration, curve_id: str) -> bool:
    return len(components_after_cut(c, [curve_id])) > 1


def _far_side(c: Configuration, curve_ids: Sequence[str]) -> Tuple[Optional[FrozenSet[str]], FrozenSet[str]]:
    """(far, near) sides after cutting; far is None when the cut does not separate."""
    comps = components_after_cut(c, curve_ids)
    base = c.basepoint
    near = next(comp for comp in comps if base in comp)
    if len(comps) != 2:
        return None, near
    far = next(comp for comp in comps if base not in comp)
    return far, near


# -------------------------
# Validation
# -------------------------

def _check_structure(c: Configuration) -> List[Violation]:
    out: List[Violation] = []
    marks = c.basepoint_regions
    if len(marks) != 1:
        out.append(Violation(ViolationKind.BASEPOINT, f"exactly one basepoint region required, found {len(marks)}"))

    for r in c.regions:
        if len(r.pair_indices) != r.genus:
            out.append(
                Violation(
                    ViolationKind.INDEX_PARTITION,
                    f"genus {r.genus} but {len(r.pair_indices)} pair indices",
                    r.id,
                )
            )

    degree: Counter = Counter()
    for cv in c.curves:
        for end in cv.endpoints:
            degree[end] += 1
    euler = sum(2 - 2 * r.genus - degree[r.id] for r in c.regions)
    if euler != 2 - 2 * c.g:
        out.append(Violation(ViolationKind.EULER, f"region Euler sum {euler} != 2-2g = {2 - 2 * c.g}"))

    owners: Dict[int, str] = {}
    for r in c.regions:
        for m in r.pair_indices:
            if not 1 <= m <= c.g:
                out.append(Violation(ViolationKind.INDEX_RANGE, f"pair index {m} outside 1..{c.g}", r.id))
            elif m in owners:
                out.append(
                    Violation(ViolationKind.INDEX_PARTITION, f"pair index {m} also carried by {owners[m]}", r.id)
                )
            else:
                owners[m] = r.id
    classes: Set[int] = set()
    for cv in c.curves:
        if cv.class_index is None:
            continue
        if not 1 <= cv.class_index <= c.g:
            out.append(Violation(ViolationKind.INDEX_RANGE, f"class a{cv.class_index} outside 1..{c.g}", cv.id))
            continue
        if cv.class_index in owners:
            out.append(
                Violation(
                    ViolationKind.INDEX_PARTITION,
                    f"class a{cv.class_index} is also a pair index of {owners[cv.class_index]}",
                    cv.id,
                )
            )
        classes.add(cv.class_index)
    missing = [m for m in range(1, c.g + 1) if m not in owners and m not in classes]
    if missing:
        out.append(
            Violation(
                ViolationKind.INDEX_PARTITION,
                "indices not covered by any region or curve: " + ", ".join(str(m) for m in missing),
            )
        )

    if c.regions and not nx.is_connected(region_graph(c)):
        out.append(Violation(ViolationKind.DISCONNECTED, "region multigraph is not connected"))
    if not c.regions:
        out.append(Violation(ViolationKind.DISCONNECTED, "configuration has no regions"))
    return out


def _check_curves(c: Configuration) -> List[Violation]:
    out: List[Violation] = []
    for cv in c.curves:
        if cv.separating:
            comps = components_after_cut(c, [cv.id])
            if len(comps) != 2:
                out.append(Violation(ViolationKind.CURVE, "separating curve does not separate", cv.id))
                continue
            genera = [side_genus(c, comp, [cv.id]) for comp in comps]
            if min(genera) < 1:
                out.append(Violation(ViolationKind.CURVE, "separating curve bounds a genus-0 side", cv.id))
        elif _is_bridge(c, cv.id):
            out.append(Violation(ViolationKind.CURVE, f"curve of class a{cv.class_index} separates the surface", cv.id))
    return out


def _check_generators(c: Configuration, *, topology: bool) -> List[Violation]:
    out: List[Violation] = []
    for bp in c.bounding_pairs:
        first, second = (c.curve(cid) for cid in bp.curve_ids)
        if first.id == second.id:
            out.append(Violation(ViolationKind.BOUNDING_PAIR, "uses the same curve twice", bp.id))
            continue
        if first.separating or second.separating:
            out.append(Violation(ViolationKind.BOUNDING_PAIR, "uses a separating curve", bp.id))
            continue
        if first.class_index != second.class_index:
            out.append(
                Violation(
                    ViolationKind.BOUNDING_PAIR,
                    f"curves are not homologous (a{first.class_index} vs a{second.class_index})",
                    bp.id,
                )
            )
            continue
        if not topology:
            continue
        far, _near = _far_side(c, bp.curve_ids)
        if far is None:
            out.append(Violation(ViolationKind.BOUNDING_PAIR, "curves do not jointly separate", bp.id))
        elif side_genus(c, far, bp.curve_ids) < 1:
            out.append(Violation(ViolationKind.BOUNDING_PAIR, "far side has genus 0 (curves are homotopic)", bp.id))

    for s in c.separating_twists:
        if not c.curve(s.curve_id).separating:
            out.append(Violation(ViolationKind.SEPARATING_TWIST, f"curve {s.curve_id!r} is not separating", s.id))

    seen: Set[str] = set()
    for gen in c.cycle:
        if gen in seen:
            out.append(Violation(ViolationKind.CYCLE, "generator repeated in the cycle", gen))
        seen.add(gen)
    return out


@lru_cache(maxsize=512)
def _validate(c: Configuration) -> Tuple[Violation, ...]:
    out = _check_structure(c)
    # curve and generator topology walks the graph; skip it on a broken skeleton
    topology = not any(v.kind in (ViolationKind.DISCONNECTED, ViolationKind.BASEPOINT) for v in out)
    if topology:
        out.extend(_check_curves(c))
    out.extend(_check_generators(c, topology=topology))
    return tuple(out)


def validate(c: Configuration) -> List[Violation]:
    """
    Every invariant violation of a configuration; an empty list means ok.

    Rules:
    - exactly one basepoint region; each region carries `genus` pair indices
    - Euler identity sum(2 - 2 g_j - deg_j) = 2 - 2g
    - indices 1..g split between region pairs and curve classes
    - connected region graph; non-separating curves are not bridges, separating
      curves are bridges with positive genus on both sides
    - bounding pairs: two distinct homologous non-separating curves that jointly
      separate, with positive genus away from the basepoint
    - separating twists reference separating curves; no repeated cycle generator
    """
    violations = list(_validate(c))
    if violations:
        logger.info("%s: %s violation(s)", c.label(), len(violations))
        for v in violations:
            logger.info("  %s", v)
    return violations


def ensure_valid(c: Configuration) -> None:
    violations = list(_validate(c))
    if violations:
        raise InvalidConfiguration(violations)


# -------------------------
# Classification
# -------------------------

def separates(c: Configuration, outer: str, inner: str) -> bool:
    """True when cutting along `outer`'s curves cuts the basepoint off from every endpoint of `inner`'s curves."""
    outer_bp = c.bounding_pair(outer)
    inner_bp = c.bounding_pair(inner)
    base = c.basepoint
    graph = region_graph(c, outer_bp.curve_ids)
    reachable = nx.node_connected_component(graph, base)
    for cid in inner_bp.curve_ids:
        if any(end in reachable for end in c.curve(cid).endpoints):
            return False
    return True


def separation_relation(c: Configuration, bp_ids: Sequence[str]) -> Dict[Tuple[str, str], bool]:
    return {(o, i): separates(c, o, i) for o in bp_ids for i in bp_ids if o != i}


@lru_cache(maxsize=512)
def _classify(c: Configuration) -> Classification:
    kinds = [c.generator_kind(gen) for gen in c.cycle]
    if GeneratorKind.SEPARATING_TWIST in kinds:
        return Classification(Verdict.HAS_SEPARATING_TWIST)

    classes = [c.bp_class(gen) for gen in c.cycle]
    if len(set(classes)) != len(classes):
        return Classification(Verdict.DEPENDENT_CLASSES)

    relation = separation_relation(c, c.cycle)
    # in a nested collection the j-th pair separates exactly j earlier ones
    counts = {gen: sum(1 for other in c.cycle if other != gen and relation[(gen, other)]) for gen in c.cycle}
    order = tuple(sorted(c.cycle, key=lambda gen: (counts[gen], gen)))
    for j, later in enumerate(order):
        for earlier in order[:j]:
            if not relation[(later, earlier)]:
                return Classification(Verdict.NOT_NESTED)
    return Classification(Verdict.TRULY_NESTED, order)


def classify(c: Configuration) -> Classification:
    """
    Verdict for the distinguished cycle of a validated configuration.

    Notes:
    - HAS_SEPARATING_TWIST wins over every other verdict.
    - DEPENDENT_CLASSES: a repeated class index (standard position makes this
      the same as linear dependence).
    - TRULY_NESTED: the nesting order is recovered from the pairwise separation
      relation, never taken from the declared cycle order.
    - The empty cycle is vacuously TRULY_NESTED with an empty order.
    """
    ensure_valid(c)
    return _classify(c)


def _require_nested(c: Configuration, order: Optional[Sequence[str]]) -> Tuple[str, ...]:
    found = classify(c)
    if not found.truly_nested:
        raise ContractViolation(f"{c.label()} is {found.verdict.value}, not TRULY_NESTED")
    if order is not None and tuple(order) != found.order:
        raise ContractViolation(f"order {' '.join(order)} is not the nesting order {' '.join(found.order)}")
    if not found.order:
        raise ContractViolation("the empty cycle has no far or near subsurface")
    return found.order


def far_pair_indices(c: Configuration, bp_id: str) -> Tuple[int, ...]:
    bp = c.bounding_pair(bp_id)
    far, _near = _far_side(c, bp.curve_ids)
    if far is None:
        raise ContractViolation(f"bounding pair {bp_id!r} does not separate the surface")
    return side_pair_indices(c, far, bp.curve_ids)


def near_pair_indices(c: Configuration, bp_id: str) -> Tuple[int, ...]:
    bp = c.bounding_pair(bp_id)
    _far, near = _far_side(c, bp.curve_ids)
    return side_pair_indices(c, near, bp.curve_ids)


def far_symplectic_form(c: Configuration, order: Optional[Sequence[str]] = None) -> MultiVector:
    """omega_0: the symplectic form of the side of the first pair away from the basepoint."""
    nested = _require_nested(c, order)
    return symplectic_form(c.g, far_pair_indices(c, nested[0]))


def near_symplectic_form(c: Configuration, order: Optional[Sequence[str]] = None) -> MultiVector:
    """omega^0: the symplectic form of the basepoint side of the last pair."""
    nested = _require_nested(c, order)
    return symplectic_form(c.g, near_pair_indices(c, nested[-1]))
