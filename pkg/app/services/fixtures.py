from __future__ import annotations

import logging
import random
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence

from ..config import settings
from ..errors import ContractViolation
from ..models.surface import BoundingPair, Configuration, Curve, Region, SeparatingTwist
from .config_parser import load_config

logger = logging.getLogger(__name__)

# Shipped fixture files under app/data/fixtures, by name.
SHIPPED = (
    "nested_g4_k2",
    "nested_gysin_g4",
    "nested_g4_k3",
    "side_by_side_g4",
    "ring_g3",
    "closest_a_g5",
    "closest_b_g5",
    "single_bp_g2",
    "septwist_g3",
    "bare_g2",
    "nested_g6_k3",
)

# Short names for the standard drawings of these configurations; each one
# resolves to the shipped file above.
ALIASES: Dict[str, str] = {
    "fig3a": "nested_g6_k3",
    "fig4b": "side_by_side_g4",
    "fig5": "nested_g4_k2",
    "fig6": "nested_gysin_g4",
    "fig7": "ring_g3",
    "fig9a": "closest_a_g5",
    "fig9b": "closest_b_g5",
}


def fixture_path(name: str, base: Optional[Path] = None) -> Path:
    root = Path(base) if base is not None else settings.fixtures_path
    return root / f"{ALIASES.get(name, name)}.cfg"


def load_fixture(name: str, base: Optional[Path] = None) -> Configuration:
    path = fixture_path(name, base)
    if not path.is_file():
        raise ContractViolation(f"unknown fixture {name!r} (looked for {path})")
    return load_config(path)


# -------------------------
# Builders
# -------------------------

def nested_chain(
    g: int,
    classes: Sequence[int],
    far_pairs: Sequence[int],
    between_pairs: Sequence[Sequence[int]],
    near_pairs: Sequence[int],
    name: str = "",
) -> Configuration:
    """
    A chain of regions R0 (far) - R1 - ... - Rk (basepoint) with bounding pair
    f_i made of two curves of class a_{classes[i-1]} joining R_{i-1} and R_i.

    between_pairs lists the pair indices of R1..R_{k-1}; the cycle is f1..fk.
    """
    k = len(classes)
    if k < 1:
        raise ContractViolation("nested_chain needs at least one bounding pair")
    if len(between_pairs) != k - 1:
        raise ContractViolation(f"nested_chain needs {k - 1} between-regions (got {len(between_pairs)})")
    pair_sets: List[Sequence[int]] = [far_pairs, *between_pairs, near_pairs]
    regions = tuple(
        Region(f"R{i}", len(pairs), tuple(sorted(pairs)), i == k) for i, pairs in enumerate(pair_sets)
    )
    curves: List[Curve] = []
    pairs: List[BoundingPair] = []
    for i, cls in enumerate(classes, start=1):
        ends = (f"R{i - 1}", f"R{i}")
        curves.append(Curve(f"c{i}a", cls, ends))
        curves.append(Curve(f"c{i}b", cls, ends))
        pairs.append(BoundingPair(f"f{i}", (f"c{i}a", f"c{i}b")))
    return Configuration(
        g=g,
        regions=regions,
        curves=tuple(curves),
        bounding_pairs=tuple(pairs),
        cycle=tuple(bp.id for bp in pairs),
        name=name,
    )


def single_bounding_pair(g: int, far_genus: int, name: str = "") -> Configuration:
    """One bounding pair of class a_{far_genus+1}; pairs 1..far_genus lie on the far side."""
    if not 1 <= far_genus <= g - 1:
        raise ContractViolation(f"far genus must be in 1..{g - 1} (got {far_genus})")
    cls = far_genus + 1
    far = list(range(1, far_genus + 1))
    near = list(range(cls + 1, g + 1))
    return nested_chain(g, [cls], far, [], near, name=name or f"single_bp_g{g}_far{far_genus}")


def ring(g: int, length: Optional[int] = None, name: str = "") -> Configuration:
    """
    Regions R0 (basepoint, genus 0) and R1..R_{g-1} (pair i) joined in a ring by
    curves gamma_1..gamma_g of class a_g; f_k = {gamma_k, gamma_{k+1}}.

    The cycle is f_1..f_length (default g-1).
    """
    if g < 2:
        raise ContractViolation(f"ring needs g >= 2 (got {g})")
    length = g - 1 if length is None else length
    if not 1 <= length <= g - 1:
        raise ContractViolation(f"ring cycle length must be in 1..{g - 1} (got {length})")
    regions = [Region("R0", 0, (), True)] + [Region(f"R{i}", 1, (i,), False) for i in range(1, g)]
    curves = []
    for k in range(1, g + 1):
        curves.append(Curve(f"gamma{k}", g, (f"R{k - 1}", f"R{k % g}")))
    pairs = [BoundingPair(f"f{k}", (f"gamma{k}", f"gamma{k + 1}")) for k in range(1, g)]
    return Configuration(
        g=g,
        regions=tuple(regions),
        curves=tuple(curves),
        bounding_pairs=tuple(pairs),
        cycle=tuple(f"f{k}" for k in range(1, length + 1)),
        name=name or f"ring_g{g}",
    )


def bare_surface(g: int, name: str = "") -> Configuration:
    """The whole surface as one basepoint region; empty cycle."""
    return Configuration(
        g=g,
        regions=(Region("S", g, tuple(range(1, g + 1)), True),),
        name=name or f"bare_g{g}",
    )


def with_separating_twist(c: Configuration, region_pairs: Sequence[int], name: str = "") -> Configuration:
    """
    Split the pairs `region_pairs` off the basepoint region behind a separating
    curve and append its twist to the cycle.
    """
    base = c.region(c.basepoint)
    moved = tuple(sorted(region_pairs))
    if not moved or not set(moved) <= set(base.pair_indices):
        raise ContractViolation("split pairs must be a nonempty subset of the basepoint region's pairs")
    kept = tuple(p for p in base.pair_indices if p not in moved)
    regions = tuple(
        Region(r.id, len(kept), kept, True) if r.id == base.id else r for r in c.regions
    ) + (Region("Rsep", len(moved), moved, False),)
    curves = c.curves + (Curve("s", None, (base.id, "Rsep")),)
    return Configuration(
        g=c.g,
        regions=regions,
        curves=curves,
        bounding_pairs=c.bounding_pairs,
        separating_twists=c.separating_twists + (SeparatingTwist("t1", "s"),),
        cycle=c.cycle + ("t1",),
        name=name or f"{c.label()}+sep",
    )


def add_basepoint_handle(c: Configuration, name: str = "") -> Configuration:
    """Embed c in genus g+1 by giving the basepoint region one more handle (pair g+1)."""
    new_index = c.g + 1
    regions = tuple(
        Region(r.id, r.genus + 1, r.pair_indices + (new_index,), True, r.line) if r.contains_basepoint else r
        for r in c.regions
    )
    return Configuration(
        g=new_index,
        regions=regions,
        curves=c.curves,
        bounding_pairs=c.bounding_pairs,
        separating_twists=c.separating_twists,
        cycle=c.cycle,
        name=name or f"{c.label()}+handle",
    )


# -------------------------
# Relabelings
# -------------------------

def relabel_ids(c: Configuration, mapping: Mapping[str, str], name: str = "") -> Configuration:
    """Rename region/curve/generator ids; ids missing from `mapping` keep their name."""

    def m(x: str) -> str:
        return mapping.get(x, x)

    return Configuration(
        g=c.g,
        regions=tuple(Region(m(r.id), r.genus, r.pair_indices, r.contains_basepoint) for r in c.regions),
        curves=tuple(Curve(m(cv.id), cv.class_index, (m(cv.endpoints[0]), m(cv.endpoints[1]))) for cv in c.curves),
        bounding_pairs=tuple(BoundingPair(m(bp.id), (m(bp.curve_ids[0]), m(bp.curve_ids[1]))) for bp in c.bounding_pairs),
        separating_twists=tuple(SeparatingTwist(m(s.id), m(s.curve_id)) for s in c.separating_twists),
        cycle=tuple(m(gen) for gen in c.cycle),
        name=name or c.name,
    )


def relabel_indices(c: Configuration, perm: Mapping[int, int], name: str = "") -> Configuration:
    """Apply a permutation of 1..g to every pair index and class index."""
    if sorted(perm) != list(range(1, c.g + 1)) or sorted(perm.values()) != list(range(1, c.g + 1)):
        raise ContractViolation(f"relabel_indices needs a permutation of 1..{c.g}")
    return Configuration(
        g=c.g,
        regions=tuple(
            Region(r.id, r.genus, tuple(sorted(perm[p] for p in r.pair_indices)), r.contains_basepoint)
            for r in c.regions
        ),
        curves=tuple(
            Curve(cv.id, None if cv.class_index is None else perm[cv.class_index], cv.endpoints) for cv in c.curves
        ),
        bounding_pairs=c.bounding_pairs,
        separating_twists=c.separating_twists,
        cycle=c.cycle,
        name=name or c.name,
    )


def swap_pairs(c: Configuration, i: int, j: int) -> Configuration:
    perm: Dict[int, int] = {m: m for m in range(1, c.g + 1)}
    perm[i], perm[j] = j, i
    return relabel_indices(c, perm)


def with_cycle_order(c: Configuration, cycle: Sequence[str]) -> Configuration:
    if sorted(cycle) != sorted(c.cycle):
        raise ContractViolation("new cycle order must permute the existing cycle")
    return Configuration(
        g=c.g,
        regions=c.regions,
        curves=c.curves,
        bounding_pairs=c.bounding_pairs,
        separating_twists=c.separating_twists,
        cycle=tuple(cycle),
        name=c.name,
    )


# -------------------------
# Random sampling
# -------------------------

def random_nested_chain(rng: random.Random, max_genus: int = 6) -> Configuration:
    """
    A valid truly nested chain with g <= max_genus, disguised: index labels are
    permuted, ids renamed and the declared cycle order shuffled.
    """
    if max_genus < 2:
        raise ContractViolation(f"random_nested_chain needs max_genus >= 2 (got {max_genus})")
    g = rng.randint(2, max_genus)
    k = rng.randint(1, g - 1)
    spare = g - k  # pair indices left for the regions, far region needs at least one
    slots = k + 1
    counts = [0] * slots
    counts[0] = 1
    for _ in range(spare - 1):
        counts[rng.randrange(slots)] += 1

    labels = list(range(1, g + 1))
    rng.shuffle(labels)
    cursor = 0
    region_pairs: List[List[int]] = []
    for n in counts:
        region_pairs.append(labels[cursor:cursor + n])
        cursor += n
    classes = labels[cursor:cursor + k]

    base = nested_chain(g, classes, region_pairs[0], region_pairs[1:-1], region_pairs[-1])

    mapping: Dict[str, str] = {}
    tag = rng.randrange(10_000)
    for r in base.regions:
        mapping[r.id] = f"reg{tag}_{rng.randrange(10_000)}_{r.id}"
    for cv in base.curves:
        mapping[cv.id] = f"cur{tag}_{rng.randrange(10_000)}_{cv.id}"
    for bp in base.bounding_pairs:
        mapping[bp.id] = f"bp{tag}_{rng.randrange(10_000)}_{bp.id}"
    renamed = relabel_ids(base, mapping, name=f"random_chain_g{g}_k{k}")
    order = list(renamed.cycle)
    rng.shuffle(order)
    return with_cycle_order(renamed, order)
