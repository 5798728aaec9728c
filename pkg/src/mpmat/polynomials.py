"""Exact integer polynomial arithmetic.

Two small immutable polynomial types back everything that is reported as a
polynomial:

* :class:`BiPoly` -- bivariate polynomials in ``x`` and ``y`` with integer
  coefficients (Tutte polynomials).
* :class:`LaurentPoly` -- one-variable Laurent polynomials in ``q`` with
  integer coefficients (graded dimensions, Euler characteristics).

Coefficients are plain Python ints, so arithmetic is exact at any size.
Rendering is canonical and deterministic: BiPoly terms are sorted by
descending (total degree, x-degree), Laurent terms by descending exponent.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import ParseError, ZeroAtNegativeExponent

IntLike = Union[int, "LaurentPoly"]


def _clean(terms: Mapping) -> dict:
    return {k: c for k, c in terms.items() if c}


class BiPoly:
    """Sparse bivariate polynomial: map (i, j) -> coefficient of x^i y^j."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], int] | None = None):
        terms = _clean(terms or {})
        for (i, j) in terms:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in BiPoly term {(i, j)}")
        self._terms = terms

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def one(cls) -> "BiPoly":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def terms(self) -> Dict[Tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "BiPoly":
        if isinstance(other, int):
            other = BiPoly.const(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        if isinstance(other, int):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, int):
            other = BiPoly.const(other)
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("BiPoly power must be non-negative")
        result = BiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_int(self, x: int, y: int) -> int:
        """Integer evaluation, with the 0**0 == 1 convention."""
        total = 0
        for (i, j), c in self._terms.items():
            total += c * (x**i) * (y**j)
        return total

    def __repr__(self) -> str:
        return f"BiPoly({self.render()!r})"

    def render(self) -> str:
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda ij: (-(ij[0] + ij[1]), -ij[0]))
        chunks = []
        for idx, (i, j) in enumerate(keys):
            c = self._terms[(i, j)]
            mono = "*".join(
                part
                for part in (_var_part("x", i), _var_part("y", j))
                if part
            )
            chunks.append(_format_term(idx == 0, c, mono))
        return "".join(chunks)


def _var_part(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


def _format_term(first: bool, coeff: int, mono: str) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if mono:
        body = mono if mag == 1 else f"{mag}*{mono}"
    else:
        body = str(mag)
    if first:
        return body if coeff > 0 else f"-{body}"
    return f" {sign} {body}"


class LaurentPoly:
    """Sparse one-variable Laurent polynomial: map exponent -> coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms or {})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def q(cls, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: 1})

    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exponent(self) -> int:
        if not self._terms:
            return 0
        return min(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("LaurentPoly power must be non-negative")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"

    def render(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for idx, e in enumerate(sorted(self._terms, reverse=True)):
            chunks.append(_format_term(idx == 0, self._terms[e], _var_part("q", e)))
        return "".join(chunks)


def eval_bipoly(p: BiPoly, x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """Substitute Laurent polynomials for x and y in ``p``.

    Uses the 0**0 == 1 convention (the empty product), so substituting the
    zero polynomial into a variable keeps the terms of degree zero in that
    variable.
    """
    x_powers = {0: LaurentPoly.one()}
    y_powers = {0: LaurentPoly.one()}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = power(cache, base, n - 1) * base
        return cache[n]

    total = LaurentPoly.zero()
    for (i, j), c in p.terms().items():
        total = total + power(x_powers, x, i) * power(y_powers, y, j) * c
    return total


def eval_at_integer(p: LaurentPoly, k: int):
    """Exact evaluation of a Laurent polynomial at an integer point.

    Returns an int whenever the value is integral, otherwise an exact
    Fraction (possible when negative exponents are present and |k| > 1).
    Raises ZeroAtNegativeExponent for k == 0 with negative exponents.
    """
    if k == 0 and p.min_exponent() < 0:
        raise ZeroAtNegativeExponent(
            "cannot evaluate negative exponents at q = 0"
        )
    total = Fraction(0)
    for e, c in p.terms().items():
        total += c * Fraction(k) ** e
    if total.denominator == 1:
        return int(total)
    return total


_TERM_RE = re.compile(r"^(?:(\d+)(\*)?)?(q(?:\^(-?\d+))?)?$")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a Laurent polynomial from text.

    Grammar: a sum/difference of terms, each an optional integer
    coefficient, an optional ``*``, and an optional ``q`` power written
    ``q`` or ``q^<int>`` (negative exponents allowed).  Whitespace is
    ignored.  Examples: ``2``, ``1+q``, ``q^-1+1+q``, ``3*q^2 - q``.
    """
    squeezed = "".join(text.split())
    if not squeezed:
        raise ParseError("empty polynomial text")
    # split into signed terms
    pieces = re.split(r"(?=[+-])", squeezed)
    terms: dict = {}
    for piece in pieces:
        if not piece:
            continue
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
        m = _TERM_RE.match(piece)
        if not m or (m.group(1) is None and m.group(3) is None):
            raise ParseError(f"malformed polynomial term {piece!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) and m.group(3) is None:
            raise ParseError(f"dangling '*' in polynomial term {piece!r}")
        if m.group(3) is None:
            exponent = 0
        elif m.group(4) is None:
            exponent = 1
        else:
            exponent = int(m.group(4))
        terms[exponent] = terms.get(exponent, 0) + sign * coeff
    return LaurentPoly(terms)
