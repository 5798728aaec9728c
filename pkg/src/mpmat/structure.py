"""MP-digraph recognition and structure theory.

A digraph is an MP-digraph when its multipaths form the independent sets
of a matroid over the edge set.  This holds exactly when

* (MP1) the digraph contains no transitive triangle and no zigzag, up to
  reversing all edges, and
* (MP2) every coherently oriented cycle of length >= 2 is a whole
  connected component once loops are disregarded.

Loops never affect which edge subsets are multipaths, they only add rank-0
elements to the matroid; this is why MP2 is evaluated on the loop-stripped
digraph (a cycle component carrying an extra loop is still fine).

For verified MP-digraphs the edge set splits into dynamical modules (loops,
coherent-cycle components, in-stars, out-stars, and leftover single edges),
and the matroid is the direct sum of the corresponding uniform matroids.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .digraph import (
    Digraph,
    PatternWitness,
    bits,
    directed_cycles,
    find_forbidden_pattern,
)
from .errors import CapExceeded, NotMpDigraph
from .matroid import EXHAUSTIVE_CAP, Matroid
from .multipath import is_multipath


def multipath_matroid(g: Digraph) -> Matroid:
    """The pair (edge set, multipaths) as an independence structure.

    This is a genuine matroid exactly when ``recognize_mp(g).is_mp``; the
    rank machinery in :mod:`mpmat.matroid` assumes that.
    """
    return Matroid(len(g.edges), lambda s: is_multipath(g, s))


@dataclass(frozen=True)
class NonComponentCycle:
    """A coherently oriented cycle that is not a whole component.

    ``cycle`` is the cycle's edge mask and ``extra_edge`` a non-loop edge
    outside the cycle incident to one of its vertices.
    """

    cycle: int
    extra_edge: int


Witness = Union[PatternWitness, NonComponentCycle]


@dataclass(frozen=True)
class MpVerdict:
    is_mp: bool
    witness: Optional[Witness] = None


def recognize_mp(g: Digraph, max_cycles: int | None = None) -> MpVerdict:
    """Decide whether the multipaths of g form a matroid.

    Returns a verdict carrying a concrete witness on rejection: either a
    forbidden-pattern occurrence or a cycle together with an extra incident
    edge showing it is not a connected component.
    """
    pattern = find_forbidden_pattern(g)
    if pattern is not None:
        return MpVerdict(False, pattern)
    cycles = directed_cycles(g, max_cycles)
    if cycles:
        on_cycle = {}
        for cycle in cycles:
            for i in bits(cycle):
                v, w = g.edges[i]
                on_cycle.setdefault(v, cycle)
                on_cycle.setdefault(w, cycle)
        for i, (v, w) in enumerate(g.edges):
            if v == w:
                continue  # loops do not affect the multipath structure
            for endpoint in (v, w):
                cycle = on_cycle.get(endpoint)
                if cycle is not None and not (cycle >> i & 1):
                    return MpVerdict(False, NonComponentCycle(cycle, i))
    return MpVerdict(True)


def require_mp(g: Digraph) -> MpVerdict:
    verdict = recognize_mp(g)
    if not verdict.is_mp:
        raise NotMpDigraph(witness=verdict.witness)
    return verdict


def circuits_mp(g: Digraph, max_cycles: int | None = None) -> List[int]:
    """Minimal non-multipath edge subsets of any digraph, as masks.

    These are the single loops, the pairs of non-loop edges sharing a
    source or sharing a target, and the coherently oriented cycles of
    length >= 2.  When g is an MP-digraph this list is the circuit family
    of its matroid.  Sorted by (size, edge ids).
    """
    found = set()
    for i in bits(g.loop_mask):
        found.add(1 << i)
    for adjacency in (g.in_adjacency, g.out_adjacency):
        for incident in adjacency:
            ids = [eid for _, eid in incident]
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    found.add((1 << ids[a]) | (1 << ids[b]))
    found.update(directed_cycles(g, max_cycles))
    return sorted(found, key=lambda m: (m.bit_count(), sorted(bits(m))))


class ModuleKind(enum.Enum):
    LOOP = "loop"
    COHERENT_CYCLE = "coherent-cycle"
    SINK_STAR = "sink-star"
    SOURCE_STAR = "source-star"
    SINGLE_EDGE = "single-edge"


@dataclass(frozen=True)
class ModuleBlock:
    kind: ModuleKind
    edges: int
    center: Optional[int] = None
    vertices: Tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return self.edges.bit_count()


@dataclass(frozen=True)
class ModuleDecomposition:
    digraph: Digraph
    blocks: Tuple[ModuleBlock, ...]

    def block_of_edge(self, e: int) -> ModuleBlock:
        for block in self.blocks:
            if block.edges >> e & 1:
                return block
        raise KeyError(e)

    def matroid(self) -> Matroid:
        """Direct sum of the per-block uniform matroids, on the original ids.

        Every block kind is uniform with independence "at most k edges of
        the block": loops allow 0, stars and single edges allow 1, an
        m-cycle allows m - 1.
        """
        limits = [(block.edges, _block_rank(block)) for block in self.blocks]
        return Matroid(
            len(self.digraph.edges),
            lambda s: all((s & e).bit_count() <= k for e, k in limits),
        )


def _block_rank(block: ModuleBlock) -> int:
    if block.kind is ModuleKind.LOOP:
        return 0
    if block.kind is ModuleKind.COHERENT_CYCLE:
        return block.size - 1
    return 1


def dynamical_modules(g: Digraph) -> ModuleDecomposition:
    """Partition the edges of a verified MP-digraph into dynamical modules."""
    require_mp(g)
    blocks: List[ModuleBlock] = []
    assigned = 0

    for i in bits(g.loop_mask):
        blocks.append(ModuleBlock(ModuleKind.LOOP, 1 << i, center=g.edges[i][0]))
        assigned |= 1 << i

    for cycle in directed_cycles(g):
        verts = set()
        for i in bits(cycle):
            verts.update(g.edges[i])
        blocks.append(
            ModuleBlock(ModuleKind.COHERENT_CYCLE, cycle, vertices=tuple(sorted(verts)))
        )
        assigned |= cycle

    for kind, adjacency in (
        (ModuleKind.SOURCE_STAR, g.out_adjacency),
        (ModuleKind.SINK_STAR, g.in_adjacency),
    ):
        for center, incident in enumerate(adjacency):
            ids = [eid for _, eid in incident if not (assigned >> eid & 1)]
            if len(ids) >= 2:
                mask = 0
                for eid in ids:
                    mask |= 1 << eid
                # a star may not overlap a previously built block: an edge
                # with out-degree >= 2 at its source and in-degree >= 2 at
                # its target would be a zigzag, which MP1 excludes
                assert mask & assigned == 0
                blocks.append(ModuleBlock(kind, mask, center=center))
                assigned |= mask

    for i in range(len(g.edges)):
        if not (assigned >> i & 1):
            blocks.append(ModuleBlock(ModuleKind.SINGLE_EDGE, 1 << i))

    blocks.sort(key=lambda b: min(bits(b.edges)) if b.edges else -1)
    total = 0
    for block in blocks:
        assert total & block.edges == 0
        total |= block.edges
    assert total == g.full_edge_set
    return ModuleDecomposition(g, tuple(blocks))


@dataclass(frozen=True)
class UniformFactorization:
    """Multiset of (rank, ground-size) pairs of uniform direct summands."""

    factors: Tuple[Tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return sum(k for k, _ in self.factors)

    @property
    def ground_size(self) -> int:
        return sum(n for _, n in self.factors)

    def canonical(self) -> Tuple[Tuple[int, int], ...]:
        """Normal form deciding isomorphism.

        U(0, n) splits as n copies of U(0, 1) and U(n, n) as n copies of
        U(1, 1); connected uniform matroids U(k, n) with 0 < k < n are
        pairwise non-isomorphic, so after these rewrites the sorted factor
        multiset is a complete isomorphism invariant of the direct sum.
        """
        out = []
        for k, n in self.factors:
            if k == 0:
                out.extend([(0, 1)] * n)
            elif k == n:
                out.extend([(1, 1)] * n)
            else:
                out.append((k, n))
        return tuple(sorted(out))


def uniform_decomposition(g: Digraph) -> UniformFactorization:
    """Uniform factors of the multipath matroid of a verified MP-digraph."""
    decomposition = dynamical_modules(g)
    factors = []
    for block in decomposition.blocks:
        factors.append((_block_rank(block), block.size))
    factorization = UniformFactorization(tuple(sorted(factors)))
    assert factorization.ground_size == len(g.edges)
    return factorization


def matroids_isomorphic(g1: Digraph, g2: Digraph) -> bool:
    """Whether two MP-digraphs have isomorphic multipath matroids."""
    return (
        uniform_decomposition(g1).canonical()
        == uniform_decomposition(g2).canonical()
    )


def check_independence_axioms(
    ground_size: int, independents, cap: int = EXHAUSTIVE_CAP
) -> bool:
    """Literal enumeration check of the independence axioms.

    (I1) the empty set belongs to the family; (I2) the family is downward
    closed; (I3) for independents A, B with |A| > |B| some element of
    A - B extends B inside the family.
    """
    if ground_size > cap:
        raise CapExceeded(f"ground size {ground_size} above cap {cap}")
    family = {int(s) for s in independents}
    if 0 not in family:
        return False
    for a in family:
        rest = a
        while rest:
            low = rest & -rest
            rest ^= low
            if a ^ low not in family:
                return False
    by_size = sorted(family, key=int.bit_count)
    for b in family:
        nb = b.bit_count()
        for a in by_size:
            if a.bit_count() <= nb:
                continue
            diff = a & ~b
            found = False
            rest = diff
            while rest:
                low = rest & -rest
                rest ^= low
                if b | low in family:
                    found = True
                    break
            if not found:
                return False
    return True


def check_circuit_axioms(
    ground_size: int, circuits, cap: int = EXHAUSTIVE_CAP
) -> bool:
    """Literal enumeration check of the circuit axioms.

    (C1) the empty set is not a circuit; (C2) circuits are pairwise
    incomparable; (C3) for distinct circuits A, B sharing an element x,
    some circuit lies inside (A union B) - x.
    """
    if ground_size > cap:
        raise CapExceeded(f"ground size {ground_size} above cap {cap}")
    family = sorted({int(s) for s in circuits})
    if 0 in family:
        return False
    for a in family:
        for b in family:
            if a != b and a & ~b == 0:
                return False
    for ia, a in enumerate(family):
        for b in family[ia + 1 :]:
            shared = a & b
            if not shared:
                continue
            union = a | b
            rest = shared
            while rest:
                low = rest & -rest
                rest ^= low
                target = union & ~low
                if not any(c & ~target == 0 for c in family):
                    return False
    return True
