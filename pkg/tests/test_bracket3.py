"""Three-variable bracket: state sum, normal form, curl algebra, engines."""

import pytest
from hypothesis import given, settings, strategies as st

from qbracket.bracket3 import (
    CURL_MINUS,
    CURL_PLUS,
    DELTA,
    ambient3,
    ambient3_with_circle_factors,
    bracket3,
    bracket3_raw,
    raw_bracket,
    tl_evaluate,
    tl_transfer,
    _identity_matching,
)
from qbracket.classical import CIRCLE, CapacityError, kauffman_bracket
from qbracket.diagram import (
    BraidWord,
    Diagram,
    add_kink,
    closure,
    conjugate,
    parse_braid,
    rewrite_moves,
)
from qbracket.multipoly import Polynomial, parse_poly
from qbracket.quotient import normal_form, specialize_classical


@st.composite
def braid_words(draw, max_strands=4, max_letters=8):
    n = draw(st.integers(min_value=2, max_value=max_strands))
    letters = draw(
        st.lists(
            st.integers(min_value=1, max_value=n - 1).flatmap(
                lambda i: st.sampled_from([i, -i])
            ),
            max_size=max_letters,
        )
    )
    return BraidWord(n, tuple(letters))


def raw_of(text: str) -> Polynomial:
    return bracket3_raw(closure(parse_braid(text)))


# -- raw state sum -----------------------------------------------------------------

def test_crossingless_circles_give_delta_powers():
    for k in range(1, 4):
        assert bracket3_raw(Diagram((), k)) == parse_poly("+d") ** k


def test_single_kink_raw_values():
    assert raw_of("braid:2:1") == parse_poly("+a*d^2 +b*d")
    assert raw_of("braid:2:-1") == parse_poly("+b*d^2 +a*d")


def test_hopf_raw_four_state_sum():
    assert raw_of("braid:2:1,1") == parse_poly("+a^2*d^2 +2*a*b*d +b^2*d^2")


def test_trefoil_raw_eight_state_sum():
    assert raw_of("braid:2:1,1,1") == parse_poly("+a^3*d^2 +3*a^2*b*d +3*a*b^2*d^2 +b^3*d^3")


def test_every_raw_monomial_carries_delta():
    for text in ("braid:2:1,1,1", "braid:3:1,-2,1,-2", "braid:2:1,1"):
        raw = raw_of(text)
        assert all(mono[2] >= 1 for mono in raw.terms)


def test_capacity_error_propagates():
    big = parse_braid("braid:2:" + ",".join(["1"] * 25))
    with pytest.raises(CapacityError):
        bracket3_raw(closure(big))


# -- normal forms (frozen after cross-checking with an independent CAS) -------------

def test_unknot_normal_form_is_delta():
    assert bracket3(closure(parse_braid("braid:1:"))) == DELTA


def test_hopf_normal_form():
    assert bracket3(closure(parse_braid("braid:2:1,1"))) == parse_poly("-d^3 +2*d")


def test_trefoil_normal_form():
    assert bracket3(closure(parse_braid("braid:2:1,1,1"))) == parse_poly(
        "+a*d +2*b^3*d^3 -2*b^3*d +b*d^4"
    )


def test_two_crossing_unknot_normal_form_is_delta():
    # closure of s1 s2^-1 on three strands destabilizes twice to the unknot
    assert bracket3(closure(parse_braid("braid:3:1,-2"))) == DELTA


def test_poked_unlink_normal_form_is_delta_squared():
    # closure of s1 s1^-1 is the two-component unlink (identity permutation),
    # so its invariant is that of two disjoint circles
    d = closure(parse_braid("braid:2:1,-1"))
    assert bracket3(d) == parse_poly("+d^2")


# -- curl factors ---------------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(braid_words(max_strands=3, max_letters=6))
def test_kink_multipliers_exact(word):
    raw = bracket3_raw(closure(word))
    assert bracket3_raw(closure(add_kink(word, 1))) == CURL_PLUS * raw
    assert bracket3_raw(closure(add_kink(word, -1))) == CURL_MINUS * raw


def test_curl_factors_specialize_to_classical_kink_factors():
    assert specialize_classical(CURL_PLUS).terms == {3: -1}
    assert specialize_classical(CURL_MINUS).terms == {-3: -1}


def test_kink_pair_absorption():
    # adding a positive and a negative kink multiplies the raw bracket by
    # CURL_PLUS*CURL_MINUS, which the normal form absorbs on multiples of d
    for text in ("braid:2:1,1,1", "braid:3:1,-2,1,-2", "braid:2:1,1"):
        raw = raw_of(text)
        assert normal_form(CURL_PLUS * CURL_MINUS * raw) == normal_form(raw)


# -- transfer-matrix engine -------------------------------------------------------------

def test_tl_identity_braids():
    assert tl_evaluate(parse_braid("braid:2:")) == parse_poly("+d^2")
    assert tl_evaluate(parse_braid("braid:4:")) == parse_poly("+d^4")


def test_tl_equals_naive_on_corpus(corpus):
    for name, word in corpus.items():
        assert tl_evaluate(word) == bracket3_raw(closure(word)), name


@settings(max_examples=40, deadline=None)
@given(braid_words())
def test_tl_equals_naive_random_words(word):
    assert tl_evaluate(word) == bracket3_raw(closure(word))


def test_tl_strand_cap():
    with pytest.raises(CapacityError):
        tl_evaluate(BraidWord(13, ()))


def test_poke_composition_locks_the_convention():
    # composing the two crossings of a move-II poke must give exactly
    # a*b on the identity matching and a^2+b^2+a*b*d on the cup-cap
    table = tl_transfer(parse_braid("braid:2:1,-1"))
    identity = _identity_matching(2)
    cupcap = (1, 0, 3, 2)
    assert set(table) == {identity, cupcap}
    assert table[identity] == parse_poly("+a*b")
    assert table[cupcap] == parse_poly("+a^2 +b^2 +a*b*d")


def test_raw_bracket_engine_dispatch(corpus):
    trefoil = corpus["trefoil"]
    naive = raw_bracket(closure(trefoil), "naive")
    assert raw_bracket(trefoil, "tl") == naive
    assert raw_bracket(trefoil, "both") == naive
    with pytest.raises(ValueError):
        raw_bracket(closure(trefoil), "tl")
    with pytest.raises(ValueError):
        raw_bracket(trefoil, "warp")


# -- regular isotopy ----------------------------------------------------------------------

@pytest.mark.parametrize("text", ["braid:3:1,-2", "braid:2:1,1", "braid:2:1,1,1", "braid:3:1,-2,1,-2"])
def test_bracket3_invariant_under_rewrites(text):
    word = parse_braid(text)
    reference = normal_form(tl_evaluate(word))
    for seed in range(25):
        variant = rewrite_moves(word, seed=seed, count=10)
        assert normal_form(tl_evaluate(variant)) == reference


def test_bracket3_invariant_under_conjugation(corpus):
    # braid conjugation preserves the closure up to moves II and III; checked
    # separately from the insertion/relation rewrites
    for name, word in corpus.items():
        reference = normal_form(tl_evaluate(word))
        for g in range(1, word.strands):
            for sign in (1, -1):
                assert normal_form(tl_evaluate(conjugate(word, sign * g))) == reference, name


def test_rii_padded_trefoil_matches():
    plain = parse_braid("braid:2:1,1,1")
    padded = parse_braid("braid:2:1,1,-1,1,1")
    assert bracket3(closure(plain)) == bracket3(closure(padded))


# -- ambient normalization --------------------------------------------------------------

def test_ambient3_of_unknot_presentations_all_delta():
    for text in ("braid:1:", "braid:2:1", "braid:2:-1", "braid:3:1,2", "braid:3:-1,-2"):
        assert ambient3(closure(parse_braid(text))) == DELTA, text


def test_ambient3_stable_under_stabilization():
    trefoil = parse_braid("braid:2:1,1,1")          # writhe 3
    stabilized = add_kink(trefoil, 1)                # writhe 4
    destabilized = add_kink(trefoil, -1)             # writhe 2
    reference = ambient3(closure(trefoil))
    assert ambient3(closure(stabilized)) == reference
    assert ambient3(closure(destabilized)) == reference


def test_ambient3_on_rii_padded_words():
    plain = parse_braid("braid:2:1,1,1")
    padded = parse_braid("braid:2:1,1,-1,1,1")
    assert ambient3(closure(plain)) == ambient3(closure(padded))


def test_ambient3_distinguishes_unknot_from_trefoil():
    assert ambient3(closure(parse_braid("braid:2:1,1,1"))) != DELTA


def test_circle_factor_variant_reported_separately():
    d = closure(parse_braid("braid:2:1,1,1"))
    plain = ambient3(d)
    variant = ambient3_with_circle_factors(d)
    assert variant == normal_form(DELTA**3 * plain)
    assert variant != plain  # the variant keeps one circle factor per curl
    unknot = closure(parse_braid("braid:1:"))
    assert ambient3_with_circle_factors(unknot) == ambient3(unknot)  # writhe 0


# -- specialization bridge ------------------------------------------------------------------

@pytest.mark.parametrize(
    "text",
    ["braid:1:", "braid:2:1", "braid:2:1,1", "braid:2:1,1,1", "braid:3:1,-2,1,-2", "braid:2:1,1,1,1,1"],
)
def test_specialization_bridge(text):
    d = closure(parse_braid(text))
    assert specialize_classical(bracket3(d)) == CIRCLE * kauffman_bracket(d)


@settings(max_examples=25, deadline=None)
@given(braid_words(max_strands=3, max_letters=7))
def test_specialization_bridge_random(word):
    d = closure(word)
    assert specialize_classical(bracket3(d)) == CIRCLE * kauffman_bracket(d)


# -- interleaved reduction --------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(braid_words(max_strands=3, max_letters=6), st.integers(min_value=1, max_value=7))
def test_chunked_reduction_equals_reduce_at_end(word, chunk):
    # normal form is linear, so reducing partial sums early must not change
    # the final answer; this justifies bounding term growth in long runs
    raw = bracket3_raw(closure(word))
    terms = list(raw.terms.items())
    partial = Polynomial.zero()
    for start in range(0, len(terms), chunk):
        partial = normal_form(partial + Polynomial(dict(terms[start:start + chunk])))
    assert partial == normal_form(raw)
