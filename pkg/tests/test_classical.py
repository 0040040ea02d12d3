"""Classical bracket: frozen values, laws, and move invariance."""

import pytest
from hypothesis import given, settings, strategies as st

from qbracket.classical import (
    CIRCLE,
    CapacityError,
    LaurentPolynomial,
    f_invariant,
    format_laurent,
    kauffman_bracket,
    parse_laurent,
)
from qbracket.diagram import Diagram, add_kink, closure, parse_braid, rewrite_moves


def bracket_of(text: str) -> LaurentPolynomial:
    return kauffman_bracket(closure(parse_braid(text)))


# -- Laurent arithmetic and text ------------------------------------------------

def test_laurent_round_trip():
    p = LaurentPolynomial({-7: 1, -3: -1, 5: -1})
    assert parse_laurent(format_laurent(p)) == p
    assert format_laurent(p) == "-1*a^5 -1*a^-3 +1*a^-7"
    assert format_laurent(p) != format_laurent(p.mirror())


def test_laurent_parse_flexibility():
    assert parse_laurent("a^2 - a^-2") == LaurentPolynomial({2: 1, -2: -1})
    assert parse_laurent("0") == LaurentPolynomial.zero()
    assert parse_laurent("-2*a") == LaurentPolynomial({1: -2})
    with pytest.raises(ValueError):
        parse_laurent("b^2")


def test_laurent_power_and_shift():
    assert CIRCLE**2 == LaurentPolynomial({-4: 1, 0: 2, 4: 1})
    assert LaurentPolynomial.one().shift(-3) == LaurentPolynomial({-3: 1})
    with pytest.raises(ValueError):
        CIRCLE**-1


# -- frozen bracket values --------------------------------------------------------

def test_unknot_is_one():
    assert bracket_of("braid:1:") == LaurentPolynomial.one()


def test_crossingless_circle_law():
    # k disjoint circles give the (k-1)-st power of the circle factor
    for k in range(1, 6):
        d = Diagram((), k)
        assert kauffman_bracket(d) == CIRCLE ** (k - 1)


def test_kink_values_pin_the_smoothing_convention():
    assert bracket_of("braid:2:1") == LaurentPolynomial({3: -1})
    assert bracket_of("braid:2:-1") == LaurentPolynomial({-3: -1})


def test_hopf_bracket():
    assert bracket_of("braid:2:1,1") == LaurentPolynomial({4: -1, -4: -1})


def test_trefoil_bracket_and_f():
    # frozen from the eight-state hand expansion (and the standard tables)
    assert bracket_of("braid:2:1,1,1") == LaurentPolynomial({-7: 1, -3: -1, 5: -1})
    assert f_invariant(closure(parse_braid("braid:2:1,1,1"))) == LaurentPolynomial(
        {-4: 1, -12: 1, -16: -1}
    )


def test_figure_eight_bracket_matches_literature():
    assert bracket_of("braid:3:1,-2,1,-2") == LaurentPolynomial(
        {8: 1, 4: -1, 0: 1, -4: -1, -8: 1}
    )


def test_empty_diagram_rejected_capacity_respected():
    with pytest.raises(CapacityError):
        kauffman_bracket(closure(parse_braid("braid:2:" + ",".join(["1"] * 25))))


# -- structural laws ----------------------------------------------------------------

def test_mirror_property():
    for text in ("braid:2:1,1,1", "braid:3:1,-2,1,-2", "braid:2:1,1"):
        word = parse_braid(text)
        mirror_word = parse_braid(
            f"braid:{word.strands}:" + ",".join(str(-l) for l in word.letters)
        )
        assert kauffman_bracket(closure(mirror_word)) == kauffman_bracket(closure(word)).mirror()


def test_kink_multiplies_bracket_by_minus_a_cubed():
    for text in ("braid:1:", "braid:2:1,1,1", "braid:3:1,-2,1,-2"):
        word = parse_braid(text)
        base = kauffman_bracket(closure(word))
        assert kauffman_bracket(closure(add_kink(word, 1))) == base * LaurentPolynomial({3: -1})
        assert kauffman_bracket(closure(add_kink(word, -1))) == base * LaurentPolynomial({-3: -1})


def test_f_invariant_unchanged_by_kinks():
    for text in ("braid:1:", "braid:2:1,1,1", "braid:3:1,-2,1,-2"):
        word = parse_braid(text)
        reference = f_invariant(closure(word))
        assert f_invariant(closure(add_kink(word, 1))) == reference
        assert f_invariant(closure(add_kink(word, -1))) == reference


def test_f_equal_across_unknot_presentations():
    presentations = ("braid:1:", "braid:2:1", "braid:2:-1", "braid:3:1,2", "braid:3:-1,-2")
    values = {format_laurent(f_invariant(closure(parse_braid(t)))) for t in presentations}
    assert values == {"+1"}


def test_trefoil_and_mirror_differ_but_swap_under_mirroring():
    left = f_invariant(closure(parse_braid("braid:2:-1,-1,-1")))
    right = f_invariant(closure(parse_braid("braid:2:1,1,1")))
    assert left != right
    assert left == right.mirror()


# -- move invariance ------------------------------------------------------------------

@pytest.mark.parametrize("text", ["braid:3:1,-2", "braid:2:1,1", "braid:2:1,1,1", "braid:3:1,-2,1,-2"])
def test_bracket_invariant_under_seeded_rewrites(text):
    word = parse_braid(text)
    reference = kauffman_bracket(closure(word))
    for seed in range(25):
        variant = rewrite_moves(word, seed=seed, count=10)
        assert kauffman_bracket(closure(variant)) == reference


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_bracket_invariant_under_random_seeds(seed):
    word = parse_braid("braid:2:1,1,1")
    variant = rewrite_moves(word, seed=seed, count=8)
    assert kauffman_bracket(closure(variant)) == LaurentPolynomial({-7: 1, -3: -1, 5: -1})
