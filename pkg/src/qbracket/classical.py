"""The classical one-variable bracket and its writhe normalization.

The bracket maps a diagram to an integer Laurent polynomial in a and is
characterized by three rules (Kauffman, *State models and the Jones
polynomial*, Topology 26 (1987)):

    <unknot> = 1,
    <D u circle> = (-a^-2 - a^2) <D>,
    <crossing> = a <A-smoothing> + a^-1 <B-smoothing>.

Expanding every crossing gives the 2^n state sum computed here.  The bracket
only changes by -a^(+-3) under a first Reidemeister move, so
f(D) = (-a^3)^(-w(D)) <D> with w the writhe is invariant under all three
moves.
"""

from __future__ import annotations

import re
from typing import Mapping

from .diagram import Diagram, resolve_state, state_from_index, writhe


class CapacityError(RuntimeError):
    """Input too large for the exhaustive state enumeration."""


#: Crossing cap for 2^n enumeration; beyond this use the transfer-matrix path.
ENUMERATION_CAP = 24


class LaurentPolynomial:
    """Sparse integer Laurent polynomial in the single variable a."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for exp, coeff in items:
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("use mirror()/shift() to build negative powers explicitly")
        acc = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by a^k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPolynomial":
        """Substitute a -> a^-1 (the effect of mirroring a diagram)."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, value: complex) -> complex:
        return sum(c * value**e for e, c in self._terms.items())

    def span(self) -> int:
        """Difference between the largest and smallest exponent (0 if zero)."""
        if not self._terms:
            return 0
        return max(self._terms) - min(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({} if other == 0 else {0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({format_laurent(self)!r})"


def format_laurent(p: LaurentPolynomial) -> str:
    """Canonical text: terms by descending exponent, coefficient always
    printed with its sign, e.g. ``+1*a^4 -2*a -1*a^-4``."""
    if p.is_zero:
        return "0"
    chunks = []
    for exp in sorted(p.terms, reverse=True):
        coeff = p.terms[exp]
        sign = "+" if coeff > 0 else "-"
        mag = abs(coeff)
        if exp == 0:
            chunks.append(f"{sign}{mag}")
        elif exp == 1:
            chunks.append(f"{sign}{mag}*a")
        else:
            chunks.append(f"{sign}{mag}*a^{exp}")
    return " ".join(chunks)


_LAURENT_TERM = re.compile(
    r"(?P<sign>[+-])\s*(?P<mag>\d+)?\s*(?:\*?\s*a(?:\s*\^\s*(?P<exp>-?\d+))?)?"
)


def parse_laurent(text: str) -> LaurentPolynomial:
    """Parse the canonical Laurent grammar with arbitrary whitespace."""
    s = text.strip()
    if s in ("0", "+0", "-0"):
        return LaurentPolynomial.zero()
    if not s:
        raise ValueError("empty Laurent polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    terms: list[tuple[int, int]] = []
    pos = 0
    while pos < len(s):
        m = _LAURENT_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad Laurent syntax at position {pos}: {s[pos:pos + 16]!r}")
        body = m.group(0)
        mag = int(m.group("mag")) if m.group("mag") else 1
        if m.group("mag") is None and "a" not in body:
            raise ValueError(f"term with neither coefficient nor variable at position {pos}")
        coeff = -mag if m.group("sign") == "-" else mag
        if "a" not in body:
            exp = 0
        elif m.group("exp") is not None:
            exp = int(m.group("exp"))
        else:
            exp = 1
        terms.append((exp, coeff))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return LaurentPolynomial(terms)


#: Value of one extra disjoint circle: -a^-2 - a^2.
CIRCLE = LaurentPolynomial({-2: -1, 2: -1})

_circle_powers: dict[int, LaurentPolynomial] = {0: LaurentPolynomial.one()}


def _circle_power(k: int) -> LaurentPolynomial:
    while k not in _circle_powers:
        nxt = max(_circle_powers) + 1
        _circle_powers[nxt] = _circle_powers[nxt - 1] * CIRCLE
    return _circle_powers[k]


def kauffman_bracket(d: Diagram, cap: int = ENUMERATION_CAP) -> LaurentPolynomial:
    """The bracket via the full 2^n state sum.

    Each state contributes a^(#A - #B) * (-a^-2 - a^2)^(circles - 1); a
    crossing-free k-circle diagram therefore evaluates to the (k-1)-st power
    of the circle factor, and the unknot to 1.
    """
    n = d.n
    if n > cap:
        raise CapacityError(
            f"{n} crossings exceeds the enumeration cap {cap}; use the transfer-matrix engine"
        )
    if n == 0 and d.free_loops == 0:
        raise ValueError("bracket of the empty diagram is undefined")
    # group states by (exponent, circle count); expand powers only once per group
    groups: dict[tuple[int, int], int] = {}
    for index in range(1 << n):
        state = state_from_index(index, n)
        b_count = sum(state)
        loops = resolve_state(d, state)
        key = (n - 2 * b_count, loops)
        groups[key] = groups.get(key, 0) + 1
    total = LaurentPolynomial.zero()
    for (exp, loops), mult in sorted(groups.items()):
        total = total + _circle_power(loops - 1).shift(exp) * mult
    return total


def f_invariant(d: Diagram, cap: int = ENUMERATION_CAP) -> LaurentPolynomial:
    """(-a^3)^(-w) <D>: unchanged by all three Reidemeister moves."""
    w = writhe(d)
    sign = -1 if w % 2 else 1
    return kauffman_bracket(d, cap).shift(-3 * w) * sign
