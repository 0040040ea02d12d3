"""Normal forms, the ideal-equality report, variety branches, specialization."""

import pytest
from hypothesis import given, settings, strategies as st

from qbracket.classical import CIRCLE, LaurentPolynomial
from qbracket.multipoly import Polynomial, parse_poly
from qbracket.quotient import (
    BRANCHES,
    FREE_SAMPLES,
    GROEBNER_BASIS,
    IDEAL_GENERATORS,
    branches,
    distinct_branches,
    is_normal,
    normal_form,
    specialize_classical,
    verify_all_branches,
    verify_branch,
    verify_groebner,
)

P1, P2 = IDEAL_GENERATORS

monomials = st.tuples(
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=5),
)
coefficients = st.integers(min_value=-20, max_value=20)
polynomials = st.dictionaries(monomials, coefficients, max_size=5).map(Polynomial)
small_polys = st.dictionaries(
    st.tuples(
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=3),
    ),
    coefficients,
    max_size=4,
).map(Polynomial)


# -- fixed ideal data ----------------------------------------------------------

def test_generators_stored_exactly():
    assert P1 == parse_poly("+a^2*d +2*a*b*d^2 -d^2 +b^2*d")
    assert P2 == parse_poly("+a*b*d^3 +a^2*d^2 +b^2*d^2 +a*b*d -d")


def test_basis_leading_monomials():
    leads = [g.leading()[0] for g in GROEBNER_BASIS]
    assert leads == [(0, 4, 3), (1, 0, 3), (2, 0, 1)]
    assert [g.leading()[1] for g in GROEBNER_BASIS] == [1, 1, 1]


def test_third_basis_element_equals_first_generator():
    assert GROEBNER_BASIS[2] == P1


def test_derived_identity_delta_p1_minus_p2():
    lhs = Polynomial.variable("d") * P1 - P2
    rhs = parse_poly("+d") * (parse_poly("+d^2") - 1) * (parse_poly("+a*b") - 1)
    assert lhs == rhs


# -- normal form -----------------------------------------------------------------

def test_normal_form_of_basis_elements_is_zero():
    for q in GROEBNER_BASIS:
        assert normal_form(q).is_zero


def test_normal_form_of_generators_is_zero():
    assert normal_form(P1).is_zero
    assert normal_form(P2).is_zero


def test_normal_form_single_step():
    assert normal_form(parse_poly("+a^2*d")) == parse_poly("-2*a*b*d^2 +d^2 -b^2*d")


def test_normal_form_has_no_reducible_monomial():
    p = parse_poly("+a^4*b^2*d^3 -5*a*d^5 +b^6*d^4")
    assert is_normal(normal_form(p))


@settings(max_examples=100, deadline=None)
@given(polynomials)
def test_normal_form_idempotent(p):
    nf = normal_form(p)
    assert normal_form(nf) == nf
    assert is_normal(nf)


@settings(max_examples=100, deadline=None)
@given(polynomials, polynomials)
def test_normal_form_linear(p, q):
    assert normal_form(p + q) == normal_form(p) + normal_form(q)


@settings(max_examples=50, deadline=None)
@given(polynomials, polynomials)
def test_normal_form_multiplicative_through_reduction(p, q):
    assert normal_form(p * q) == normal_form(normal_form(p) * normal_form(q))


@settings(max_examples=50, deadline=None)
@given(polynomials, small_polys, small_polys)
def test_normal_form_constant_on_cosets(p, f, g):
    assert normal_form(p + f * P1 + g * P2) == normal_form(p)


def test_kink_pair_product_is_congruent_to_one_on_multiples_of_delta():
    product = parse_poly("+a*d +b") * parse_poly("+a +b*d")
    delta = Polynomial.variable("d")
    assert normal_form(delta * product) == normal_form(delta)
    # and explicitly: d * (product - 1) is the second ideal generator
    assert delta * (product - Polynomial.one()) == P2


# -- Groebner verification ---------------------------------------------------------

def test_verify_groebner_all_checks_pass():
    report = verify_groebner()
    assert report.all_passed, [c for c in report.checks if not c.passed]
    names = [c.name for c in report.checks]
    assert names == [
        "spolys_reduce_to_zero",
        "generators_reduce_to_zero",
        "basis_reduces_against_computed",
        "reduced_computed_basis_matches",
    ]


def test_verify_groebner_certifies_over_z():
    report = verify_groebner()
    assert report.z_exact
    assert report.content_events == []
    assert set(report.computed_basis) == set(GROEBNER_BASIS)


# -- branches ------------------------------------------------------------------------

def test_branch_list_counts():
    raw = branches()
    assert len(raw) == 34  # the catalogued list has 34 displayed entries
    labels = [br.label for br in raw]
    assert labels.count("sol_12") == 2  # one label occurs twice, as catalogued
    assert len({br.label for br in raw}) == 33
    assert len(distinct_branches()) == 26  # dedup by exact assignment values


def test_known_duplicate_pairs_collapse():
    by_ordinal = {br.ordinal: br for br in BRANCHES}
    # sol_23 repeats sol_11, sol_24 repeats the second sol_12 entry,
    # sol_25/26 repeat sol_7/6, sol_29/30 repeat sol_16/19, sol_31/32 repeat sol_8/9
    for dup, original in [(24, 11), (25, 13), (26, 7), (27, 6), (30, 17), (31, 20), (32, 8), (33, 9)]:
        assert by_ordinal[dup].canonical_key() == by_ordinal[original].canonical_key()


def test_branch_sol1_assignments():
    sol1 = BRANCHES[0]
    assert sol1.label == "sol_1"
    assert sol1.free == {"a"}
    values = dict(sol1.assignments)
    alpha = 2 + 0j
    assert values["b"].evaluate(alpha) == pytest.approx(0.5)
    assert values["d"].evaluate(alpha) == pytest.approx(-17 / 4)


def test_branch_sol33_is_delta_zero():
    sol33 = BRANCHES[-1]
    assert sol33.label == "sol_33"
    assert sol33.free == {"a", "b"}
    assert dict(sol33.assignments)["d"].evaluate(1j) == 0


def test_branch_sol27_is_rational_point():
    sol27 = next(br for br in BRANCHES if br.label == "sol_27")
    assert sol27.free == set()
    values = {v: val.evaluate(0j) for v, val in sol27.assignments}
    assert values == {"a": 1, "b": -2, "d": 1}


def test_verify_branch_examples():
    sol1 = BRANCHES[0]
    chk = verify_branch(sol1)
    assert chk.passed and chk.max_residual < 1e-9 and chk.samples_used == len(FREE_SAMPLES)
    sol33 = BRANCHES[-1]
    chk = verify_branch(sol33)
    assert chk.passed and chk.max_residual == 0.0  # every generator term carries d
    sol27 = next(br for br in BRANCHES if br.label == "sol_27")
    chk = verify_branch(sol27)
    assert chk.passed and chk.max_residual == 0.0 and chk.samples_used == 1


def test_verify_branch_argument_validation():
    with pytest.raises(ValueError):
        verify_branch(BRANCHES[0], samples=0)
    with pytest.raises(ValueError):
        verify_branch(BRANCHES[0], tol=0.0)


def test_all_distinct_branches_satisfy_both_relations():
    report = verify_all_branches()
    assert report.raw_count == 34
    assert report.distinct_count == 26
    assert report.all_passed
    assert all(chk.max_residual < 1e-9 for chk in report.checks)
    assert all(not chk.skipped for chk in report.checks)


# -- classical specialization ----------------------------------------------------------

def test_specialize_constant_and_delta():
    assert specialize_classical(Polynomial.one()) == LaurentPolynomial.one()
    assert specialize_classical(Polynomial.variable("d")) == CIRCLE


def test_specialize_kills_generators():
    assert specialize_classical(P1) == LaurentPolynomial.zero()
    assert specialize_classical(P2) == LaurentPolynomial.zero()


@settings(max_examples=50, deadline=None)
@given(small_polys, small_polys)
def test_specialize_kills_the_whole_ideal(f, g):
    assert specialize_classical(f * P1 + g * P2) == LaurentPolynomial.zero()


@settings(max_examples=50, deadline=None)
@given(polynomials)
def test_specialize_factors_through_normal_form(p):
    assert specialize_classical(normal_form(p)) == specialize_classical(p)
