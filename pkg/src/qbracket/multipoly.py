"""Exact sparse polynomial arithmetic over the integers in the variables a, b, d.

The ring is Z[a, b, d] with a fixed lexicographic term order (a > b > d by
default).  Everything is exact: coefficients are arbitrary-precision ints,
monomials are exponent triples, and equality is equality of the term maps.

Besides ring arithmetic the module provides the Groebner toolkit needed to
work in quotients of this ring: multivariate division with remainder,
S-polynomials, Buchberger completion, and basis reduction.  Division over Z
only rewrites a term when the divisor's leading coefficient divides it; for
bases whose leading coefficients are +-1 (every basis this package ships)
this coincides with division over the rationals and remainders are the usual
unique normal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

Monomial = tuple[int, int, int]

VARIABLES = ("a", "b", "d")

#: Hard cap on stored terms; arithmetic that would exceed it aborts loudly
#: instead of letting a runaway basis computation eat the machine.
TERM_LIMIT = 10**6


class TermLimitError(RuntimeError):
    """A polynomial operation produced more than TERM_LIMIT terms."""


@dataclass(frozen=True)
class MonomialOrder:
    """A lexicographic order given by a precedence permutation of (a, b, d).

    ``precedence`` lists variable indices most-significant first, so the
    default (0, 1, 2) is lex with a > b > d.  The order is total,
    multiplicative, and has 1 as its minimum, as any term order must.
    """

    precedence: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self) -> None:
        if sorted(self.precedence) != [0, 1, 2]:
            raise ValueError(f"precedence must permute (0, 1, 2), got {self.precedence}")

    def key(self, m: Monomial) -> tuple[int, int, int]:
        p = self.precedence
        return (m[p[0]], m[p[1]], m[p[2]])


#: The order used everywhere in this package: lex with a > b > d.
LEX_ABD = MonomialOrder((0, 1, 2))


def mono_cmp(m1: Monomial, m2: Monomial, order: MonomialOrder = LEX_ABD) -> int:
    """Compare two monomials; returns -1, 0, or 1."""
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def mono_divides(m1: Monomial, m2: Monomial) -> bool:
    """True when m1 divides m2 componentwise."""
    return m1[0] <= m2[0] and m1[1] <= m2[1] and m1[2] <= m2[2]


def mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    """m1 / m2; caller must ensure divisibility."""
    q = (m1[0] - m2[0], m1[1] - m2[1], m1[2] - m2[2])
    if min(q) < 0:
        raise ValueError(f"monomial {m2} does not divide {m1}")
    return q


def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return (max(m1[0], m2[0]), max(m1[1], m2[1]), max(m1[2], m2[2]))


class Polynomial:
    """Immutable sparse polynomial in Z[a, b, d].

    Stored as a map from exponent triple to nonzero integer coefficient.
    All operators return new values; instances are safe to share freely.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for mono, coeff in items:
            if coeff:
                ea, eb, ed = mono
                if ea < 0 or eb < 0 or ed < 0:
                    raise ValueError(f"negative exponent in monomial {mono}")
                clean[(ea, eb, ed)] = clean.get((ea, eb, ed), 0) + coeff
        clean = {m: c for m, c in clean.items() if c}
        if len(clean) > TERM_LIMIT:
            raise TermLimitError(f"polynomial with {len(clean)} terms exceeds cap {TERM_LIMIT}")
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({(0, 0, 0): 1})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def term(cls, coeff: int, mono: Monomial) -> "Polynomial":
        return cls({mono: coeff})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        i = VARIABLES.index(name)
        mono = tuple(1 if j == i else 0 for j in range(3))
        return cls({mono: 1})  # type: ignore[dict-item]

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def leading(self, order: MonomialOrder = LEX_ABD) -> tuple[Monomial, int]:
        """Leading (monomial, coefficient) under the order; error on zero."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = _gcd(g, abs(c))
            if g == 1:
                break
        return g

    def primitive_part(self, order: MonomialOrder = LEX_ABD) -> "Polynomial":
        """Divide out the content and make the leading coefficient positive."""
        if not self._terms:
            return self
        g = self.content()
        _, lc = self.leading(order)
        if lc < 0:
            g = -g
        return Polynomial({m: c // g for m, c in self._terms.items()})

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "Polynomial":
        return Polynomial.constant(other) - self

    def __mul__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero()
            return Polynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        if len(out) > TERM_LIMIT:
            raise TermLimitError(f"product has {len(out)} terms, cap is {TERM_LIMIT}")
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not defined in Z[a, b, d]")
        acc = Polynomial.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def mul_term(self, coeff: int, mono: Monomial) -> "Polynomial":
        """Multiply by a single term; cheaper than building a Polynomial."""
        if coeff == 0:
            return Polynomial.zero()
        return Polynomial(
            {(m[0] + mono[0], m[1] + mono[1], m[2] + mono[2]): c * coeff for m, c in self._terms.items()}
        )

    # -- equality / formatting ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({} if other == 0 else {(0, 0, 0): other})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


# -- canonical text form ----------------------------------------------------

def format_poly(p: Polynomial, order: MonomialOrder = LEX_ABD) -> str:
    """Canonical text: terms lex-descending, every coefficient carries a sign.

    Magnitude 1 is elided unless the term is constant; exponent 1 is elided;
    variables with exponent 0 are omitted, e.g. ``+a^2*d +2*a*b*d^2``.
    """
    if p.is_zero:
        return "0"
    chunks = []
    for mono in sorted(p.terms, key=order.key, reverse=True):
        coeff = p.terms[mono]
        sign = "+" if coeff > 0 else "-"
        mag = abs(coeff)
        factors = []
        for name, exp in zip(VARIABLES, mono):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        if not factors:
            chunks.append(f"{sign}{mag}")
        elif mag == 1:
            chunks.append(sign + "*".join(factors))
        else:
            chunks.append(f"{sign}{mag}*" + "*".join(factors))
    return " ".join(chunks)


_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])\s*
    (?P<mag>\d+)?\s*
    (?P<factors>(?:\*?\s*[abd](?:\s*\^\s*\d+)?\s*)*)
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> Polynomial:
    """Parse the canonical polynomial grammar, tolerating arbitrary whitespace.

    Accepts an optional sign on the first term and elided 1-coefficients,
    so ``a^2*d + 2*a*b*d^2`` and ``+a^2*d+2*a*b*d^2`` parse identically.
    """
    s = text.strip()
    if s in ("0", "+0", "-0"):
        return Polynomial.zero()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    terms: list[tuple[Monomial, int]] = []
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial syntax at position {pos}: {s[pos:pos + 20]!r}")
        mag_str = m.group("mag")
        factors_str = m.group("factors") or ""
        factor_list = re.findall(r"([abd])(?:\s*\^\s*(\d+))?", factors_str)
        if mag_str is None and not factor_list:
            raise ValueError(f"term with neither coefficient nor variables at position {pos}")
        coeff = int(mag_str) if mag_str is not None else 1
        if m.group("sign") == "-":
            coeff = -coeff
        exps = [0, 0, 0]
        for name, exp in factor_list:
            exps[VARIABLES.index(name)] += int(exp) if exp else 1
        terms.append(((exps[0], exps[1], exps[2]), coeff))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return Polynomial(terms)


# -- division, S-polynomials, Buchberger ------------------------------------

class DivisionResult(NamedTuple):
    quotients: list[Polynomial]
    remainder: Polynomial


def divide(
    p: Polynomial,
    basis: list[Polynomial],
    order: MonomialOrder = LEX_ABD,
) -> DivisionResult:
    """Multivariate division: p = sum(q_i * basis_i) + r, exactly over Z.

    The largest reducible monomial is rewritten first, by the earliest basis
    element whose leading monomial divides it (and whose leading coefficient
    divides its coefficient -- automatic for the monic-leading bases used
    here).  The identity above always holds exactly; remainders against a
    Groebner basis with unit leading coefficients are the canonical normal
    forms.
    """
    if any(g.is_zero for g in basis):
        raise ValueError("division by a basis containing zero")
    leads = [g.leading(order) for g in basis]
    quotients = [Polynomial.zero() for _ in basis]
    remainder_terms: dict[Monomial, int] = {}
    work = dict(p.terms)
    while work:
        mono = max(work, key=order.key)
        coeff = work.pop(mono)
        for i, (lm, lc) in enumerate(leads):
            if mono_divides(lm, mono) and coeff % lc == 0:
                qm = mono_div(mono, lm)
                qc = coeff // lc
                quotients[i] = quotients[i] + Polynomial.term(qc, qm)
                # subtract qc * qm * basis_i from the working tail
                for m2, c2 in basis[i].terms.items():
                    if m2 == lm:
                        continue
                    tgt = mono_mul(qm, m2)
                    s = work.get(tgt, 0) - qc * c2
                    if s:
                        work[tgt] = s
                    else:
                        work.pop(tgt, None)
                break
        else:
            remainder_terms[mono] = coeff
    return DivisionResult(quotients, Polynomial(remainder_terms))


def s_poly(p: Polynomial, q: Polynomial, order: MonomialOrder = LEX_ABD) -> Polynomial:
    """S-polynomial over Z: leading terms cancelled after scaling by the
    integer lcm of the leading coefficients, so no rationals appear."""
    if p.is_zero or q.is_zero:
        raise ValueError("S-polynomial of a zero polynomial is undefined")
    (mp, cp) = p.leading(order)
    (mq, cq) = q.leading(order)
    lcm_m = mono_lcm(mp, mq)
    lcm_c = abs(cp * cq) // _gcd(abs(cp), abs(cq))
    return p.mul_term(lcm_c // cp, mono_div(lcm_m, mp)) - q.mul_term(lcm_c // cq, mono_div(lcm_m, mq))


@dataclass
class BuchbergerRun:
    """Completion trace: the basis plus bookkeeping for honest reporting."""

    basis: list[Polynomial]
    pairs_processed: int = 0
    #: (polynomial text, content divided out) for every element that was not
    #: primitive when adjoined; empty means the run never left Z[a,b,d]
    #: combinations of the inputs.
    content_events: list[tuple[str, int]] = field(default_factory=list)


MAX_BASIS = 500


def buchberger_run(gens: list[Polynomial], order: MonomialOrder = LEX_ABD) -> BuchbergerRun:
    """Buchberger completion with the coprime-leading-monomial criterion.

    Nonzero S-polynomial remainders are adjoined as sign-normalized primitive
    parts; any content actually divided out is recorded so callers can tell a
    genuine Z-basis from one that is only a basis after clearing contents.
    """
    basis = [g for g in gens if not g.is_zero]
    if any(g.is_zero for g in gens):
        raise ValueError("Buchberger input contains the zero polynomial")
    run = BuchbergerRun(basis=basis)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        run.pairs_processed += 1
        lm_i, _ = basis[i].leading(order)
        lm_j, _ = basis[j].leading(order)
        if mono_lcm(lm_i, lm_j) == mono_mul(lm_i, lm_j):
            continue  # coprime leading monomials: S-poly reduces to 0
        rem = divide(s_poly(basis[i], basis[j], order), basis, order).remainder
        if rem.is_zero:
            continue
        content = rem.content()
        prim = rem.primitive_part(order)
        if content > 1:
            run.content_events.append((format_poly(rem), content))
        basis.append(prim)
        if len(basis) > MAX_BASIS:
            raise TermLimitError(f"Buchberger basis exceeded {MAX_BASIS} elements")
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return run


def buchberger(gens: list[Polynomial], order: MonomialOrder = LEX_ABD) -> list[Polynomial]:
    """Groebner basis of the ideal generated by gens (empty input gives [])."""
    if not gens:
        return []
    return buchberger_run(gens, order).basis


def reduce_basis(
    basis: list[Polynomial],
    order: MonomialOrder = LEX_ABD,
    primitive: bool = False,
) -> list[Polynomial]:
    """Minimal, inter-reduced form of a Groebner basis.

    Elements whose leading monomial is divisible by another's are dropped,
    the survivors are fully reduced against each other, leading coefficients
    are made positive, and the result is sorted by leading monomial.  Integer
    content is kept as-is unless ``primitive`` is set (then each element is
    divided by its content).  The input must already be a Groebner basis.
    """
    work = [g for g in basis if not g.is_zero]
    # minimality: drop redundant leading monomials (keep the earliest)
    kept: list[Polynomial] = []
    leads = [g.leading(order)[0] for g in work]
    for i, g in enumerate(work):
        lm = leads[i]
        redundant = any(
            j != i and mono_divides(leads[j], lm) and (leads[j] != lm or j < i)
            for j in range(len(work))
        )
        if not redundant:
            kept.append(g)
    # inter-reduce tails until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = kept[:i] + kept[i + 1:]
            if not others:
                continue
            rem = divide(kept[i], others, order).remainder
            if rem.is_zero:
                kept.pop(i)
                changed = True
                break
            if rem != kept[i]:
                kept[i] = rem
                changed = True
    out = []
    for g in kept:
        if primitive:
            g = g.primitive_part(order)
        else:
            _, lc = g.leading(order)
            if lc < 0:
                g = -g
        out.append(g)
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out
