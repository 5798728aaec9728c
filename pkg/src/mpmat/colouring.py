"""Flowing colourings, spanning forests, and the colouring identity.

A flowing k-colouring assigns colours 1..k to vertices so that every edge
joins different colours, edges sharing a target have equally coloured
sources, and edges sharing a source have equally coloured targets.  The
equality constraints force whole vertex classes to share one colour, so
counting reduces to proper colourings of a small quotient graph; the raw
definition is kept as an independent brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import FrozenSet, List, Optional, Tuple

from .budgets import current_budgets
from .digraph import Digraph, bits, connected_components, subgraph_spanning
from .errors import (
    AssignmentBudgetExceeded,
    BadParameters,
    HasCoherentCycle,
    IdentityViolation,
    SpanningTreeBudgetExceeded,
)
from .matroid import rank
from .multipath import is_multipath
from .polynomials import BiPoly
from .structure import multipath_matroid, require_mp, uniform_decomposition
from .tutte import _has_directed_cycle, tutte_by_uniform_product


@dataclass(frozen=True)
class FlowQuotient:
    """Vertex classes forced to share a colour, plus the induced graph.

    ``class_of[v]`` is the class index of vertex v; classes are numbered by
    their smallest member.  ``edges`` are the unordered class pairs joined
    by some digraph edge.  ``contradictory`` is set when an edge joins a
    class to itself (loops included): then no flowing colouring exists.
    """

    class_of: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    edges: FrozenSet[Tuple[int, int]]
    contradictory: bool


def flow_quotient(g: Digraph) -> FlowQuotient:
    parent = list(range(g.vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for adjacency in (g.in_adjacency, g.out_adjacency):
        for incident in adjacency:
            if len(incident) >= 2:
                first = incident[0][0]
                for other, _ in incident[1:]:
                    union(first, other)

    groups: dict = {}
    for v in range(g.vertex_count):
        groups.setdefault(find(v), []).append(v)
    classes = tuple(tuple(sorted(vs)) for vs in sorted(groups.values()))
    class_of = [0] * g.vertex_count
    for idx, members in enumerate(classes):
        for v in members:
            class_of[v] = idx

    quotient_edges = set()
    contradictory = False
    for v, w in g.edges:
        cv, cw = class_of[v], class_of[w]
        if cv == cw:
            contradictory = True
        else:
            quotient_edges.add((min(cv, cw), max(cv, cw)))
    return FlowQuotient(
        tuple(class_of), classes, frozenset(quotient_edges), contradictory
    )


def _chromatic_count(vertices: frozenset, edges: frozenset, k: int) -> int:
    """Proper k-colourings of a simple undirected graph, exactly.

    Splits into connected components; trees and edgeless components have
    closed-form counts, everything else recurses by deletion/contraction.
    """
    if not vertices:
        return 1
    # component split
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps: dict = {}
    for v in vertices:
        comps.setdefault(find(v), set()).add(v)
    if len(comps) > 1:
        total = 1
        for comp in comps.values():
            comp_edges = frozenset(e for e in edges if e[0] in comp)
            total *= _chromatic_count(frozenset(comp), comp_edges, k)
        return total

    n, m = len(vertices), len(edges)
    if m == 0:
        return k**n
    if m == n - 1:  # connected with n-1 edges: a tree
        return k * (k - 1) ** (n - 1)
    a, b = min(edges)
    deleted = frozenset(e for e in edges if e != (a, b))
    merged = set()
    for x, y in deleted:
        if x == b:
            x = a
        if y == b:
            y = a
        if x != y:
            merged.add((min(x, y), max(x, y)))
    return _chromatic_count(vertices, deleted, k) - _chromatic_count(
        vertices - {b}, frozenset(merged), k
    )


def count_flowing(g: Digraph, k: int) -> int:
    """Number of flowing k-colourings, via the quotient reduction."""
    if k < 0:
        raise BadParameters("k must be non-negative")
    fq = flow_quotient(g)
    if fq.contradictory:
        return 0
    return _chromatic_count(frozenset(range(len(fq.classes))), fq.edges, k)


def count_flowing_raw(
    g: Digraph, k: int, max_assignments: int | None = None
) -> int:
    """Brute-force count straight from the definition (oracle).

    Sweeps all k^|V| colour assignments and checks the three clauses
    literally; independent of the quotient machinery.
    """
    if k < 0:
        raise BadParameters("k must be non-negative")
    if max_assignments is None:
        max_assignments = current_budgets().max_assignments
    n = g.vertex_count
    if k**n > max_assignments:
        raise AssignmentBudgetExceeded(
            f"{k}^{n} assignments exceed the budget of {max_assignments}"
        )
    same_source = []
    same_target = []
    for adjacency, acc in (
        (g.out_adjacency, same_source),
        (g.in_adjacency, same_target),
    ):
        for incident in adjacency:
            nodes = [u for u, _ in incident]
            acc.extend((nodes[0], other) for other in nodes[1:])
    total = 0
    for colours in product(range(k), repeat=n):
        if any(colours[v] == colours[w] for v, w in g.edges):
            continue
        if any(colours[a] != colours[b] for a, b in same_target):
            continue
        if any(colours[a] != colours[b] for a, b in same_source):
            continue
        total += 1
    return total


def max_rank_spanning_forest(g: Digraph) -> int:
    """A spanning forest whose matroid rank equals the rank of M_g.

    Requires an MP-digraph without loops or coherently oriented cycles.
    The forest is built by greedily growing a maximum multipath (a basis of
    the matroid) and then completing it to a spanning forest of the
    underlying undirected graph, so its rank cannot drop below the basis.
    """
    require_mp(g)
    if g.loop_mask or _has_directed_cycle(g):
        raise HasCoherentCycle("digraph has a loop or a directed cycle")
    basis = 0
    for e in range(len(g.edges)):
        candidate = basis | (1 << e)
        if is_multipath(g, candidate):
            basis = candidate

    parent = list(range(g.vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    forest = 0
    for e in bits(basis):
        v, w = g.edges[e]
        parent[find(v)] = find(w)
        forest |= 1 << e
    for e, (v, w) in enumerate(g.edges):
        if forest >> e & 1:
            continue
        ra, rb = find(v), find(w)
        if ra != rb:
            parent[ra] = rb
            forest |= 1 << e
    return forest


def spanning_forests(g: Digraph, limit: int | None = None) -> List[int]:
    """All spanning forests (one spanning tree per component), as masks.

    Raises SpanningTreeBudgetExceeded when more than ``limit`` forests
    exist; the identity verifier treats that as "not enumerable".
    """
    if limit is None:
        limit = current_budgets().max_spanning_trees
    per_component: List[List[int]] = []
    for comp in connected_components(g):
        edges = [(e, *g.edges[e]) for e in comp.edge_ids if g.edges[e][0] != g.edges[e][1]]
        need = len(comp.vertices) - 1
        trees = []
        for combo in combinations(edges, need):
            parent = {v: v for v in comp.vertices}

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            merges = 0
            mask = 0
            for e, v, w in combo:
                ra, rb = find(v), find(w)
                if ra == rb:
                    break
                parent[ra] = rb
                merges += 1
                mask |= 1 << e
            else:
                if merges == need:
                    trees.append(mask)
        per_component.append(trees)
        count = 1
        for trees_list in per_component:
            count *= len(trees_list)
        if count > limit:
            raise SpanningTreeBudgetExceeded(
                f"more than {limit} spanning forests"
            )
    forests = []
    for picks in product(*per_component):
        mask = 0
        for m in picks:
            mask |= m
        forests.append(mask)
    if len(forests) > limit:
        raise SpanningTreeBudgetExceeded(f"more than {limit} spanning forests")
    return sorted(forests)


@dataclass(frozen=True)
class ColouringIdentityReport:
    rank: int
    components: int
    tutte: BiPoly
    greedy_forest: int
    forests_checked: Tuple[int, ...]
    ks: Tuple[int, ...]
    all_forests_enumerated: bool


def verify_colouring_identity(
    g: Digraph, ks, all_forests_limit: int = 50
) -> ColouringIdentityReport:
    """Check k^p0 * T(1-k, 0) == (-1)^rank * tau_S(k) on maximal-rank forests.

    The identity is asserted for the greedily constructed forest and, when
    the digraph has at most ``all_forests_limit`` spanning forests, for
    every spanning forest of maximal rank.  A failure raises
    IdentityViolation carrying the counterexample; it must never fire.
    """
    require_mp(g)
    if g.loop_mask or _has_directed_cycle(g):
        raise HasCoherentCycle("digraph has a loop or a directed cycle")
    factorization = uniform_decomposition(g)
    r = factorization.rank
    tutte = tutte_by_uniform_product(g)
    p0 = len(connected_components(g))
    greedy_forest = max_rank_spanning_forest(g)

    matroid = multipath_matroid(g)
    forests = [greedy_forest]
    enumerated = False
    try:
        all_forests = spanning_forests(g, limit=all_forests_limit)
        forests = [f for f in all_forests if rank(matroid, f) == r]
        if greedy_forest not in forests:
            raise IdentityViolation(
                "greedy forest is not of maximal rank",
                payload={"digraph": g, "forest": greedy_forest},
            )
        enumerated = True
    except SpanningTreeBudgetExceeded:
        pass

    ks = tuple(ks)
    sign = -1 if r % 2 else 1
    for forest in forests:
        sub = subgraph_spanning(g, forest)
        for k in ks:
            lhs = k**p0 * tutte.eval_int(1 - k, 0)
            rhs = sign * count_flowing(sub, k)
            if lhs != rhs:
                raise IdentityViolation(
                    "colouring identity failed",
                    payload={
                        "digraph": g,
                        "forest": forest,
                        "k": k,
                        "lhs": lhs,
                        "rhs": rhs,
                    },
                )
    return ColouringIdentityReport(
        rank=r,
        components=p0,
        tutte=tutte,
        greedy_forest=greedy_forest,
        forests_checked=tuple(forests),
        ks=ks,
        all_forests_enumerated=enumerated,
    )
