"""The three-variable bracket, its normal form, and writhe normalization.

The raw sum keeps all three smoothing weights free: a state with i
A-smoothings, j B-smoothings, and k resulting circles contributes the
monomial a^i b^j d^k.  Nothing is divided out, so every nonempty diagram's
raw bracket is divisible by d.  Reducing the raw sum modulo the move-two
ideal (see :mod:`.quotient`) gives a quantity unchanged by Reidemeister
moves II and III; a first move multiplies the raw sum by a curl factor,

    positive curl:  a*d + b        negative curl:  a + b*d

exactly (their product is congruent to 1 on multiples of d, since
d*((a*d + b)*(a + b*d) - 1) is the second ideal generator).  Padding with
|w| opposite-sign curl factors before reducing therefore yields an invariant
of the ambient isotopy class.

Two evaluation engines compute the same raw polynomial: the naive 2^n state
enumeration, and a transfer-matrix pass that carries a linear combination of
planar matchings (the Temperley-Lieb basis) across the braid word, one
letter at a time.  They are checked against each other in the tests and can
be cross-asserted at runtime.
"""

from __future__ import annotations

from .classical import CapacityError, ENUMERATION_CAP
from .diagram import BraidWord, Diagram, closure, resolve_state, state_from_index, writhe
from .multipoly import Polynomial, parse_poly
from .quotient import normal_form

#: Closed-diagram multiplier of one positive / negative curl on the raw sum.
CURL_PLUS: Polynomial = parse_poly("+a*d +b")
CURL_MINUS: Polynomial = parse_poly("+a +b*d")

DELTA: Polynomial = Polynomial.variable("d")

#: Everything that pins the state-sum conventions, for cache keys and reports.
CONVENTION = "order:a>b>d;A(positive)=vertical;circles:d^k;curl+:+a*d +b;curl-:+a +b*d"

#: Strand cap for the transfer-matrix engine (basis size is Catalan(n)).
TL_STRAND_CAP = 12


def bracket3_raw(d: Diagram, cap: int = ENUMERATION_CAP) -> Polynomial:
    """Raw three-variable state sum over all 2^n smoothing choices.

    A crossing-free k-circle diagram gives d^k; every state of a nonempty
    diagram carries at least one circle, so d divides the result.
    """
    n = d.n
    if n > cap:
        raise CapacityError(
            f"{n} crossings exceeds the enumeration cap {cap}; use the transfer-matrix engine"
        )
    if n == 0 and d.free_loops == 0:
        raise ValueError("bracket of the empty diagram is undefined")
    counts: dict[tuple[int, int, int], int] = {}
    for index in range(1 << n):
        state = state_from_index(index, n)
        b_count = sum(state)
        loops = resolve_state(d, state)
        mono = (n - b_count, b_count, loops)
        counts[mono] = counts.get(mono, 0) + 1
    return Polynomial(counts)


def bracket3(d: Diagram, cap: int = ENUMERATION_CAP) -> Polynomial:
    """Normal form of the raw sum: the regular-isotopy invariant."""
    return normal_form(bracket3_raw(d, cap))


def ambient3(d: Diagram, cap: int = ENUMERATION_CAP) -> Polynomial:
    """Ambient-isotopy invariant: pad with |w| opposite curls, then reduce.

    A diagram of writhe w > 0 is multiplied by CURL_MINUS^w (w < 0 by
    CURL_PLUS^-w) before taking the normal form, exactly the effect of
    normalizing the writhe to zero with opposite-sign curls.
    """
    w = writhe(d)
    raw = bracket3_raw(d, cap)
    factor = CURL_MINUS if w > 0 else CURL_PLUS
    return normal_form(factor ** abs(w) * raw)


def ambient3_with_circle_factors(d: Diagram, cap: int = ENUMERATION_CAP) -> Polynomial:
    """Variant normalization whose curl factors keep their circle: d*(a*d+b)
    and d*(a+b*d).  Differs from :func:`ambient3` by a factor d^|w| inside
    the normal form; reported alongside it, since the two only agree for
    writhe-zero diagrams."""
    w = writhe(d)
    raw = bracket3_raw(d, cap)
    factor = (CURL_MINUS if w > 0 else CURL_PLUS) * DELTA
    return normal_form(factor ** abs(w) * raw)


# -- transfer-matrix evaluation --------------------------------------------------

Matching = tuple[int, ...]
# A planar perfect matching on 2n points: indices 0..n-1 are the bottom
# boundary, n..2n-1 the current frontier (frontier position j is point n+j).
# matching[x] is the partner of point x.


def _identity_matching(n: int) -> Matching:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _apply_cupcap(m: Matching, u: int, v: int) -> tuple[Matching, bool]:
    """Compose with the cup-cap generator on adjacent frontier points u, v.

    Returns the new matching and whether a closed circle split off (the case
    where u and v were each other's partners).
    """
    pu, pv = m[u], m[v]
    if pu == v:
        return m, True
    out = list(m)
    out[pu], out[pv] = pv, pu
    out[u], out[v] = v, u
    return tuple(out), False


def _close_trace(m: Matching, n: int) -> int:
    """Circles formed when frontier point n+j is joined back to bottom point j."""
    seen = [False] * (2 * n)
    circles = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        circles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            y = m[x]                      # along the tangle
            seen[y] = True
            x = y - n if y >= n else y + n  # along the closure arc
    return circles


def tl_transfer(b: BraidWord, strand_cap: int = TL_STRAND_CAP) -> dict[Matching, Polynomial]:
    """The braid word as a combination of planar matchings, before closure.

    Each letter maps the running element T to weight_vert * T plus
    weight_cup * T e_i, where e_i is the cup-cap generator at the letter's
    position; a circle split off during composition contributes a factor d.
    """
    n = b.strands
    if n > strand_cap:
        raise CapacityError(f"{n} strands exceeds the transfer-matrix cap {strand_cap}")
    alpha = Polynomial.variable("a")
    beta = Polynomial.variable("b")
    table: dict[Matching, Polynomial] = {_identity_matching(n): Polynomial.one()}
    for letter in b.letters:
        i = abs(letter)
        u, v = n + i - 1, n + i
        vert, cup = (alpha, beta) if letter > 0 else (beta, alpha)
        nxt: dict[Matching, Polynomial] = {}
        for m, coeff in table.items():
            prev = nxt.get(m)
            gain = coeff * vert
            nxt[m] = gain if prev is None else prev + gain
            m2, circle = _apply_cupcap(m, u, v)
            gain = coeff * cup
            if circle:
                gain = gain * DELTA
            prev = nxt.get(m2)
            nxt[m2] = gain if prev is None else prev + gain
        table = {m: c for m, c in nxt.items() if not c.is_zero}
    return table


def tl_evaluate(b: BraidWord, strand_cap: int = TL_STRAND_CAP) -> Polynomial:
    """Raw three-variable bracket of the closure via the transfer pass.

    Runs :func:`tl_transfer` and then joins top to bottom, collecting a
    factor d per closure circle.  Equals bracket3_raw(closure(b)) exactly.
    """
    table = tl_transfer(b, strand_cap)
    total = Polynomial.zero()
    for m, coeff in table.items():
        total = total + coeff * DELTA ** _close_trace(m, b.strands)
    return total


def raw_bracket(source: BraidWord | Diagram, engine: str = "naive") -> Polynomial:
    """Raw bracket through a named engine: ``naive``, ``tl``, or ``both``.

    ``tl`` requires a braid word; ``both`` runs the two engines and insists
    on exact agreement.
    """
    if engine not in ("naive", "tl", "both"):
        raise ValueError(f"unknown engine {engine!r}")
    word = source if isinstance(source, BraidWord) else None
    diagram = source if isinstance(source, Diagram) else None
    if engine in ("tl", "both") and word is None:
        raise ValueError("the transfer-matrix engine needs a braid word input")
    if engine == "tl":
        return tl_evaluate(word)
    if diagram is None:
        diagram = closure(word)
    naive = bracket3_raw(diagram)
    if engine == "both":
        tl = tl_evaluate(word)
        if tl != naive:
            raise AssertionError(
                f"engine disagreement on {word.text}: naive={naive} tl={tl}"
            )
    return naive
