"""Tutte polynomials of multipath matroids, computed three independent ways.

* from the corank-nullity sum over all edge subsets (any matroid),
* by deletion / contraction recursion directly on the digraph,
* as the product of the Tutte polynomials of the uniform factors.

Exact agreement of the three routes on every MP-digraph is one of the main
cross-checks of the whole package.
"""

from __future__ import annotations

from functools import lru_cache

from .digraph import Digraph, delete_edge, mp_contract
from .errors import CapExceeded
from .matroid import Matroid, rank, uniform
from .multipath import is_multipath
from .polynomials import BiPoly
from .structure import multipath_matroid, require_mp, uniform_decomposition

DEFINITION_CAP = 20


def tutte_by_definition(m: Matroid, cap: int = DEFINITION_CAP) -> BiPoly:
    """Corank-nullity sum over all subsets of the ground set.

    T(x, y) = sum over subsets A of (x-1)^(r(E)-r(A)) * (y-1)^(|A|-r(A)).
    The rank of every subset comes from one dynamic programming pass over
    the subset lattice: the greedy independent set of A is the greedy set
    of A minus its largest element, possibly extended by that element, so
    each subset costs exactly one independence query.
    """
    n = m.ground_size
    if n > cap:
        raise CapExceeded(f"ground size {n} above cap {cap}")
    if n == 0:
        return BiPoly.one()

    independent = m.independent
    greedy = [0] * (1 << n)
    counts: dict = {}
    for subset in range(1, 1 << n):
        high = 1 << (subset.bit_length() - 1)
        base = greedy[subset ^ high]
        candidate = base | high
        greedy[subset] = candidate if independent(candidate) else base

    total_rank = greedy[(1 << n) - 1].bit_count()
    for subset in range(1 << n):
        r = greedy[subset].bit_count()
        key = (total_rank - r, subset.bit_count() - r)
        counts[key] = counts.get(key, 0) + 1

    xm1 = BiPoly.x() - 1
    ym1 = BiPoly.y() - 1
    max_z = max(z for z, _ in counts)
    max_n = max(nl for _, nl in counts)
    x_pow = [BiPoly.one()]
    for _ in range(max_z):
        x_pow.append(x_pow[-1] * xm1)
    y_pow = [BiPoly.one()]
    for _ in range(max_n):
        y_pow.append(y_pow[-1] * ym1)

    out = BiPoly.zero()
    for (z, nl), c in counts.items():
        out = out + x_pow[z] * y_pow[nl] * c
    return out


def _has_directed_cycle(g: Digraph) -> bool:
    """Any coherently oriented cycle of length >= 2 (DFS, loops ignored)."""
    n = g.vertex_count
    state = bytearray(n)  # 0 unvisited, 1 on stack, 2 done
    out_adj = g.out_adjacency
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, 0)]
        state[start] = 1
        while stack:
            vertex, idx = stack[-1]
            if idx < len(out_adj[vertex]):
                stack[-1] = (vertex, idx + 1)
                target = out_adj[vertex][idx][0]
                if state[target] == 1:
                    return True
                if state[target] == 0:
                    state[target] = 1
                    stack.append((target, 0))
            else:
                state[vertex] = 2
                stack.pop()
    return False


def _is_coloop_edge(g: Digraph, e: int) -> bool:
    """Coloop test for a non-loop edge of an MP-digraph.

    Without coherently oriented cycles, an edge (v, w) is a coloop exactly
    when v has no other outgoing non-loop edge and w no other incoming one.
    With cycles present the test falls back to the rank drop.
    """
    v, w = g.edges[e]
    if not _has_directed_cycle(g):
        return len(g.out_adjacency[v]) <= 1 and len(g.in_adjacency[w]) <= 1
    m = multipath_matroid(g)
    full = g.full_edge_set
    return rank(m, full & ~(1 << e)) == rank(m, full) - 1


def tutte_recursive(g: Digraph, memo: bool = False) -> BiPoly:
    """Deletion / contraction recursion on the digraph itself.

    At each step the smallest-id edge is processed: a digraph loop
    contributes a factor y and is deleted, a coloop contributes a factor x
    and is contracted, and any other edge branches into deletion plus
    contraction.  The edge order is mathematically irrelevant; fixing it
    makes traces reproducible.
    """
    require_mp(g)
    cache: dict | None = {} if memo else None
    return _tutte_rec(g, cache)


def _tutte_rec(g: Digraph, cache: dict | None) -> BiPoly:
    if not g.edges:
        return BiPoly.one()
    if cache is not None:
        key = (g.vertex_count, g.edges)
        hit = cache.get(key)
        if hit is not None:
            return hit
    v, w = g.edges[0]
    if v == w:
        result = BiPoly.y() * _tutte_rec(delete_edge(g, 0)[0], cache)
    elif _is_coloop_edge(g, 0):
        result = BiPoly.x() * _tutte_rec(mp_contract(g, 0)[0], cache)
    else:
        result = _tutte_rec(delete_edge(g, 0)[0], cache) + _tutte_rec(
            mp_contract(g, 0)[0], cache
        )
    if cache is not None:
        cache[key] = result
    return result


@lru_cache(maxsize=None)
def tutte_of_uniform(k: int, n: int) -> BiPoly:
    return tutte_by_definition(uniform(k, n))


def tutte_by_uniform_product(g: Digraph) -> BiPoly:
    """Product of the Tutte polynomials of the uniform factors of M_g."""
    factorization = uniform_decomposition(g)
    out = BiPoly.one()
    for k, n in factorization.factors:
        out = out * tutte_of_uniform(k, n)
    return out


def tutte_multipath(g: Digraph, cap: int = DEFINITION_CAP) -> BiPoly:
    """tutte_by_definition applied to the multipath matroid of g."""
    require_mp(g)
    return tutte_by_definition(multipath_matroid(g), cap)
