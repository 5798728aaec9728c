"""Generic finite matroid kernel over an independence predicate.

A matroid is represented by its ground-set size and a predicate on edge
masks.  The rank machinery relies on the exchange property: greedy
augmentation in increasing id order reaches a maximum independent subset,
so ``rank`` is exact on genuine matroids (which is a precondition, checked
separately by the axiom oracles in :mod:`mpmat.structure`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

from .digraph import bits
from .errors import BadParameters, CapExceeded, ContractLoop

EXHAUSTIVE_CAP = 16


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    independent: Callable[[int], bool]

    @property
    def full_mask(self) -> int:
        return (1 << self.ground_size) - 1


def rank(m: Matroid, subset: int) -> int:
    """Size of a maximal independent subset of ``subset`` (greedy)."""
    chosen = 0
    size = 0
    for i in bits(subset):
        candidate = chosen | (1 << i)
        if m.independent(candidate):
            chosen = candidate
            size += 1
    return size


def full_rank(m: Matroid) -> int:
    return rank(m, m.full_mask)


def corank_nullity(m: Matroid, subset: int) -> Tuple[int, int]:
    """(corank, nullity) of a subset: r(E) - r(A) and |A| - r(A)."""
    r = rank(m, subset)
    return full_rank(m) - r, subset.bit_count() - r


def is_loop(m: Matroid, e: int) -> bool:
    return not m.independent(1 << e)


def is_coloop(m: Matroid, e: int) -> bool:
    """True iff e lies in every basis, i.e. removing it drops the rank."""
    return rank(m, m.full_mask & ~(1 << e)) == full_rank(m) - 1


def _insert_zero_bit(mask: int, position: int) -> int:
    low = mask & ((1 << position) - 1)
    high = (mask >> position) << (position + 1)
    return high | low


def delete(m: Matroid, e: int) -> Matroid:
    """Delete element e; remaining ids shift down past e."""
    if not (0 <= e < m.ground_size):
        raise BadParameters(f"element {e} not in ground set")
    inner = m.independent
    return Matroid(
        m.ground_size - 1,
        lambda s, _e=e: inner(_insert_zero_bit(s, _e)),
    )


def contract(m: Matroid, e: int) -> Matroid:
    """Contract element e; remaining ids shift down past e.

    A subset is independent in the contraction when its preimage together
    with e is independent in m.  Contracting a matroid loop is rejected.
    """
    if not (0 <= e < m.ground_size):
        raise BadParameters(f"element {e} not in ground set")
    if not m.independent(1 << e):
        raise ContractLoop(f"element {e} is a loop")
    inner = m.independent
    return Matroid(
        m.ground_size - 1,
        lambda s, _e=e: inner(_insert_zero_bit(s, _e) | (1 << _e)),
    )


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Ground sets concatenated (m1 first); independents are unions."""
    n1 = m1.ground_size
    low_mask = (1 << n1) - 1
    ind1, ind2 = m1.independent, m2.independent
    return Matroid(
        n1 + m2.ground_size,
        lambda s: ind1(s & low_mask) and ind2(s >> n1),
    )


def uniform(k: int, n: int) -> Matroid:
    """The uniform matroid: independents are the subsets of size <= k."""
    if not 0 <= k <= n:
        raise BadParameters(f"uniform({k}, {n}) requires 0 <= k <= n")
    return Matroid(n, lambda s: s.bit_count() <= k)


def equal_matroids(m1: Matroid, m2: Matroid, cap: int = EXHAUSTIVE_CAP) -> bool:
    """Exhaustive comparison of independence predicates on all subsets."""
    if m1.ground_size != m2.ground_size:
        return False
    n = m1.ground_size
    if n > cap:
        raise CapExceeded(f"ground size {n} above exhaustive cap {cap}")
    ind1, ind2 = m1.independent, m2.independent
    return all(ind1(s) == ind2(s) for s in range(1 << n))


def brute_force_rank(m: Matroid, subset: int) -> int:
    """Maximum independent subset size by full submask sweep (oracle)."""
    best = 0
    sub = subset
    while True:
        if m.independent(sub):
            size = sub.bit_count()
            if size > best:
                best = size
        if sub == 0:
            break
        sub = (sub - 1) & subset
    return best


def count_bases(m: Matroid) -> int:
    """Number of maximum-size independent sets."""
    r = full_rank(m)
    from itertools import combinations

    total = 0
    for combo in combinations(range(m.ground_size), r):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if m.independent(mask):
            total += 1
    return total
