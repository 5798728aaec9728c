"""Core digraph representation and surgeries.

A :class:`Digraph` is a vertex count plus an ordered edge list; the edge
identifier of an edge is its position in that list.  Between two distinct
vertices at most one edge per direction is allowed, while any number of
loops may sit on a vertex.  Edge subsets are passed around as int bitmasks
over edge identifiers (bit ``i`` set means edge ``i`` is in the subset).

Surgeries (deletion, contraction) return a new digraph together with an
:class:`EdgeCorrespondence` mapping surviving old edge identifiers to
their new positions, so ground-set identifications between the input and
output never depend on implicit renumbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Tuple

from .budgets import current_budgets
from .errors import (
    CycleBudgetExceeded,
    DuplicateNonLoopEdge,
    InvalidEdge,
    LoopContraction,
    OutOfRangeVertex,
)


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids) -> int:
    """Bitmask with the given edge identifiers set."""
    out = 0
    for i in ids:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def full_edge_set(self) -> int:
        return (1 << len(self.edges)) - 1

    @cached_property
    def loop_mask(self) -> int:
        out = 0
        for i, (v, w) in enumerate(self.edges):
            if v == w:
                out |= 1 << i
        return out

    @cached_property
    def out_adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Per vertex: sorted tuple of (target, edge id), loops excluded."""
        adj = [[] for _ in range(self.vertex_count)]
        for i, (v, w) in enumerate(self.edges):
            if v != w:
                adj[v].append((w, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def in_adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Per vertex: sorted tuple of (source, edge id), loops excluded."""
        adj = [[] for _ in range(self.vertex_count)]
        for i, (v, w) in enumerate(self.edges):
            if v != w:
                adj[w].append((v, i))
        return tuple(tuple(sorted(a)) for a in adj)

    def incident_edges(self, vertex: int) -> Tuple[int, ...]:
        """All edge ids touching ``vertex``, loops included."""
        return tuple(
            i
            for i, (v, w) in enumerate(self.edges)
            if v == vertex or w == vertex
        )

    def __repr__(self) -> str:
        return f"Digraph({self.vertex_count}, {list(self.edges)})"


@dataclass(frozen=True)
class EdgeCorrespondence:
    """Partial injective map old edge id -> new edge id after a surgery."""

    mapping: Tuple[Tuple[int, int], ...]
    removed: Tuple[int, ...]

    def image(self, edge_id: int) -> Optional[int]:
        for old, new in self.mapping:
            if old == edge_id:
                return new
        return None

    def map_set(self, edge_set: int) -> int:
        """Push a bitmask of surviving old ids through the correspondence."""
        out = 0
        for old, new in self.mapping:
            if edge_set >> old & 1:
                out |= 1 << new
        return out


def new_digraph(vertex_count: int, edge_list) -> Digraph:
    """Validate and build a digraph; edge ids are list positions."""
    if vertex_count < 0:
        raise OutOfRangeVertex("vertex_count must be non-negative")
    seen = set()
    edges = []
    for v, w in edge_list:
        if not (0 <= v < vertex_count and 0 <= w < vertex_count):
            raise OutOfRangeVertex(
                f"edge ({v}, {w}) out of range for {vertex_count} vertices"
            )
        if v != w:
            if (v, w) in seen:
                raise DuplicateNonLoopEdge(f"duplicate edge ({v}, {w})")
            seen.add((v, w))
        edges.append((v, w))
    return Digraph(vertex_count, tuple(edges))


def reverse(g: Digraph) -> Digraph:
    """Reverse the orientation of every edge; edge ids are preserved."""
    return Digraph(g.vertex_count, tuple((w, v) for v, w in g.edges))


@dataclass(frozen=True)
class Component:
    vertices: Tuple[int, ...]
    edge_ids: Tuple[int, ...]


def connected_components(g: Digraph) -> Tuple[Component, ...]:
    """Components of the underlying undirected multigraph.

    Isolated vertices form their own (edgeless) components; the number of
    blocks is the component count of the digraph.
    """
    parent = list(range(g.vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for v, w in g.edges:
        ra, rb = find(v), find(w)
        if ra != rb:
            parent[ra] = rb

    groups: dict = {}
    for v in range(g.vertex_count):
        groups.setdefault(find(v), []).append(v)
    members = sorted(groups.values())
    index_of = {}
    for idx, verts in enumerate(members):
        for v in verts:
            index_of[v] = idx
    edge_groups = [[] for _ in members]
    for i, (v, _) in enumerate(g.edges):
        edge_groups[index_of[v]].append(i)
    return tuple(
        Component(tuple(verts), tuple(eids))
        for verts, eids in zip(members, edge_groups)
    )


def p0(g: Digraph) -> int:
    """Number of connected components."""
    return len(connected_components(g))


def delete_edge(g: Digraph, e: int) -> Tuple[Digraph, EdgeCorrespondence]:
    if not (0 <= e < len(g.edges)):
        raise InvalidEdge(f"no edge with id {e}")
    edges = tuple(pair for i, pair in enumerate(g.edges) if i != e)
    mapping = tuple(
        (old, old if old < e else old - 1)
        for old in range(len(g.edges))
        if old != e
    )
    return Digraph(g.vertex_count, edges), EdgeCorrespondence(mapping, (e,))


def mp_contract(g: Digraph, e: int) -> Tuple[Digraph, EdgeCorrespondence]:
    """Contract a non-loop edge e = (v, w), merging v and w into one vertex.

    The merged vertex keeps the digraph inside the simple-edge convention by
    turning displaced edges into loops: an edge out of v (other than e) or
    into w becomes a loop at the merged vertex, as does the companion edge
    (w, v) when present and any loop previously at v or w.  Edges into v or
    out of w keep their direction and are re-attached to the merged vertex.
    All other edges are untouched.  Surviving edges keep their relative
    order, so the correspondence is the shift-down around e.
    """
    if not (0 <= e < len(g.edges)):
        raise InvalidEdge(f"no edge with id {e}")
    v, w = g.edges[e]
    if v == w:
        raise LoopContraction(f"edge {e} is a loop at vertex {v}")

    keep = sorted(u for u in range(g.vertex_count) if u not in (v, w))
    relabel = {u: i for i, u in enumerate(keep)}
    x = len(keep)  # the merged vertex gets the last index

    new_edges = []
    mapping = []
    seen_nonloop = set()
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            continue
        a_in = a in (v, w)
        b_in = b in (v, w)
        if not a_in and not b_in:
            pair = (relabel[a], relabel[b])
        elif not a_in and b == v:
            pair = (relabel[a], x)
        elif a == w and not b_in:
            pair = (x, relabel[b])
        else:
            # out of v, into w, the companion (w, v), or a loop at v or w:
            # all collapse to a loop at the merged vertex
            pair = (x, x)
        if pair[0] != pair[1]:
            # cannot happen in a valid digraph: each non-loop image arises
            # from a unique preimage
            if pair in seen_nonloop:
                raise DuplicateNonLoopEdge(
                    f"contraction of edge {e} produced parallel edge {pair}"
                )
            seen_nonloop.add(pair)
        mapping.append((i, len(new_edges)))
        new_edges.append(pair)

    return (
        Digraph(g.vertex_count - 1, tuple(new_edges)),
        EdgeCorrespondence(tuple(mapping), (e,)),
    )


def subgraph_spanning(g: Digraph, edge_set: int) -> Digraph:
    """Spanning subgraph (same vertices) keeping only the given edges."""
    return Digraph(
        g.vertex_count,
        tuple(g.edges[i] for i in bits(edge_set)),
    )


def disjoint_union(g1: Digraph, g2: Digraph) -> Digraph:
    """Disjoint union; vertices and edges of g2 are shifted after g1's."""
    shift = g1.vertex_count
    edges = g1.edges + tuple((v + shift, w + shift) for v, w in g2.edges)
    return Digraph(g1.vertex_count + g2.vertex_count, edges)


def directed_cycles(g: Digraph, max_cycles: int | None = None) -> list:
    """All simple coherently oriented cycles of length >= 2, as edge masks.

    Loops are excluded.  Each cycle is enumerated once (rooted at its
    smallest vertex) and the result is sorted by (length, edge ids), which
    fixes a platform-independent order.  Raises CycleBudgetExceeded if more
    than ``max_cycles`` cycles would be produced.
    """
    if max_cycles is None:
        max_cycles = current_budgets().max_cycles
    out_adj = g.out_adjacency
    cycles = []

    def search(root: int, vertex: int, edge_mask: int, on_path: set):
        for target, eid in out_adj[vertex]:
            if target == root:
                if len(cycles) >= max_cycles:
                    raise CycleBudgetExceeded(
                        f"more than {max_cycles} directed cycles"
                    )
                cycles.append(edge_mask | (1 << eid))
            elif target > root and target not in on_path:
                on_path.add(target)
                search(root, target, edge_mask | (1 << eid), on_path)
                on_path.remove(target)

    for root in range(g.vertex_count):
        search(root, root, 0, {root})

    cycles.sort(key=lambda m: (m.bit_count(), sorted(bits(m))))
    return cycles


@dataclass(frozen=True)
class PatternWitness:
    """Concrete occurrence of a forbidden pattern.

    kind "A" is the transitive triangle: vertices (u, v, w) with edges
    (u, v), (v, w), (u, w).  kind "B" is the zigzag on four distinct
    vertices (a, b, c, d) with edges (a, b), (c, b), (c, d).  When
    ``reversed_orientation`` is true the edges occur in the edge-reversed
    digraph (each pattern class is closed under reversal, so this is
    redundant information kept for diagnostics).
    """

    kind: str
    vertices: Tuple[int, ...]
    reversed_orientation: bool = False


def _find_pattern_a(g: Digraph) -> Optional[Tuple[int, ...]]:
    has_edge = {(v, w) for v, w in g.edges if v != w}
    for u, v in sorted(has_edge):
        for w, eid in g.out_adjacency[v]:
            if w != u and (u, w) in has_edge:
                return (u, v, w)
    return None


def _find_pattern_b(g: Digraph) -> Optional[Tuple[int, ...]]:
    in_adj = g.in_adjacency
    out_adj = g.out_adjacency
    for b in range(g.vertex_count):
        sources = [s for s, _ in in_adj[b]]
        if len(sources) < 2:
            continue
        for a in sources:
            for c in sources:
                if c == a:
                    continue
                for d, _ in out_adj[c]:
                    if d not in (a, b, c):
                        return (a, b, c, d)
    return None


def find_forbidden_pattern(g: Digraph) -> Optional[PatternWitness]:
    """Search for a transitive triangle or a zigzag, up to edge reversal.

    Both patterns are checked on g and on reverse(g); each pattern class is
    closed under reversal, so the reversed pass is defensive redundancy.
    The transitive triangle is reported in preference to the zigzag.
    """
    rev = reverse(g)
    for flipped, host in ((False, g), (True, rev)):
        hit = _find_pattern_a(host)
        if hit is not None:
            return PatternWitness("A", hit, flipped)
    for flipped, host in ((False, g), (True, rev)):
        hit = _find_pattern_b(host)
        if hit is not None:
            return PatternWitness("B", hit, flipped)
    return None
