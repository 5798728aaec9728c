"""Graded Euler characteristic of the multipath complex.

For a digraph g and a Laurent polynomial alpha (the graded dimension of
the coefficient algebra), the graded Euler characteristic is

    chi(g, alpha) = sum over multipaths m of (-1)^|m| * alpha^(p0(m)),

where p0(m) counts the connected components of the spanning subgraph m.
Only the alternating sum is materialised here; no cochain complex or
differential is ever built.  For MP-forests this equals a Tutte-polynomial
specialisation, which :func:`verify_euler_identity` asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .digraph import Digraph, connected_components
from .errors import IdentityViolation, NotMpForest
from .multipath import enumerate_multipaths, p0_of_subset
from .polynomials import BiPoly, LaurentPoly, eval_bipoly
from .structure import recognize_mp, uniform_decomposition
from .tutte import tutte_by_uniform_product


def is_mp_forest(g: Digraph) -> bool:
    """MP-digraph whose underlying undirected multigraph is a forest.

    Loops and parallel pairs (digons) are undirected cycles, so a forest
    has neither; the edge count then determines acyclicity.
    """
    if not recognize_mp(g).is_mp:
        return False
    return len(g.edges) == g.vertex_count - len(connected_components(g))


def chi_mu(
    g: Digraph, alpha: LaurentPoly, max_subsets: int | None = None
) -> LaurentPoly:
    """Alternating multipath sum of alpha^(component count)."""
    coefficients: dict = {}
    for length, group in enumerate(enumerate_multipaths(g, max_subsets)):
        sign = -1 if length % 2 else 1
        for mask in group:
            p = p0_of_subset(g, mask)
            coefficients[p] = coefficients.get(p, 0) + sign
    powers = {0: LaurentPoly.one()}

    def alpha_power(n: int) -> LaurentPoly:
        if n not in powers:
            powers[n] = alpha_power(n - 1) * alpha
        return powers[n]

    total = LaurentPoly.zero()
    for p, c in coefficients.items():
        if c:
            total = total + alpha_power(p) * c
    return total


def chi_via_tutte(g: Digraph, alpha: LaurentPoly) -> LaurentPoly:
    """(-1)^r * alpha^(|E| - r + p0) * T(1 - alpha, 1) for an MP-forest."""
    if not is_mp_forest(g):
        raise NotMpForest("graded Euler identity requires an MP-forest")
    r = uniform_decomposition(g).rank
    p0 = len(connected_components(g))
    exponent = len(g.edges) - r + p0
    tutte = tutte_by_uniform_product(g)
    value = eval_bipoly(tutte, LaurentPoly.one() - alpha, LaurentPoly.one())
    signed = value if r % 2 == 0 else -value
    return alpha**exponent * signed


@dataclass(frozen=True)
class EulerIdentityReport:
    rank: int
    chi: Tuple[LaurentPoly, ...]
    alphas: Tuple[LaurentPoly, ...]


def verify_euler_identity(g: Digraph, alphas) -> EulerIdentityReport:
    """Assert chi_mu == chi_via_tutte for each alpha on an MP-forest."""
    if not is_mp_forest(g):
        raise NotMpForest("graded Euler identity requires an MP-forest")
    alphas = tuple(alphas)
    values = []
    for alpha in alphas:
        direct = chi_mu(g, alpha)
        via_tutte = chi_via_tutte(g, alpha)
        if direct != via_tutte:
            raise IdentityViolation(
                "graded Euler identity failed",
                payload={
                    "digraph": g,
                    "alpha": alpha,
                    "chi_mu": direct,
                    "chi_via_tutte": via_tutte,
                },
            )
        values.append(direct)
    return EulerIdentityReport(
        rank=uniform_decomposition(g).rank,
        chi=tuple(values),
        alphas=alphas,
    )
