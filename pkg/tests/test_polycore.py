"""Exact polynomial arithmetic: ring axioms, parsing, calculus, determinants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weddle import linalg
from weddle.polycore import (
    MultiPoly,
    PolyMatrix,
    divides,
    linear_coefficients,
    linear_form,
    parse_poly,
    projectively_equal,
    vanishes_on_line,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def polys(nvars=3, max_degree=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_degree) for _ in range(nvars)])
    term = st.tuples(mono, rationals)
    return st.lists(term, max_size=max_terms).map(
        lambda terms: sum(
            (MultiPoly.monomial(nvars, m, c) for m, c in terms),
            MultiPoly.zero(nvars),
        )
    )


points = st.tuples(rationals, rationals, rationals)


# ---- ring axioms ----

@given(polys(), polys(), polys())
def test_addition_is_commutative_and_associative(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)


@given(polys(), polys(), polys())
@settings(max_examples=50)
def test_multiplication_is_commutative_associative_distributive(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys())
def test_additive_and_multiplicative_identities(p):
    zero = MultiPoly.zero(3)
    one = MultiPoly.constant(3, 1)
    assert p + zero == p
    assert p * one == p
    assert p - p == zero
    assert p * zero == zero


@given(polys(), points)
def test_evaluation_is_a_ring_homomorphism(p, pt):
    q = MultiPoly.monomial(3, (1, 1, 0), Fraction(1, 2)) + 1
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)


@given(polys(max_degree=2, max_terms=3), st.integers(0, 3))
def test_power_matches_repeated_multiplication(p, n):
    expected = MultiPoly.constant(3, 1)
    for _ in range(n):
        expected = expected * p
    assert p**n == expected


# ---- printing and parsing ----

@given(polys())
def test_parse_inverts_str(p):
    assert parse_poly(str(p), nvars=3) == p


def test_parse_fixed_expressions():
    p = parse_poly("x0^2 - 2*x1*x2 + 1/3")
    assert p.coefficient((2, 0, 0)) == 1
    assert p.coefficient((0, 1, 1)) == -2
    assert p.coefficient((0, 0, 0)) == Fraction(1, 3)
    assert parse_poly("-x0*x1") == MultiPoly.monomial(2, (1, 1), -1)
    square = parse_poly("x0 + x1") ** 2
    assert square == parse_poly("x0^2 + 2*x0*x1 + x1^2")
    assert parse_poly("0", nvars=2).is_zero()


def test_str_orders_terms_by_degree_then_grlex():
    p = parse_poly("x0*x1 + x1^3 + x0^2 + 1")
    assert str(p) == "x1^3 + x0^2 + x0*x1 + 1"


def test_parse_rejects_malformed_input():
    with pytest.raises(ValueError):
        parse_poly("x0 +")
    with pytest.raises(ValueError):
        parse_poly("y1 * 2")


# ---- calculus ----

@given(polys(), polys())
@settings(max_examples=50)
def test_derivative_satisfies_product_rule(p, q):
    for var in range(3):
        assert (p * q).diff(var) == p.diff(var) * q + p * q.diff(var)


@given(polys(max_degree=2, max_terms=4))
def test_euler_identity_for_homogeneous_polynomials(p):
    parts = {}
    for mono, coeff in p.terms.items():
        parts.setdefault(sum(mono), MultiPoly.zero(3))
        parts[sum(mono)] += MultiPoly.monomial(3, mono, coeff)
    for degree, part in parts.items():
        euler = MultiPoly.zero(3)
        for var in range(3):
            euler += MultiPoly.variable(3, var) * part.diff(var)
        assert euler == part.scale(degree)


@given(polys(max_degree=2, max_terms=3), points)
def test_compose_commutes_with_evaluation(p, pt):
    args = [
        parse_poly("x0 + x1", nvars=3),
        parse_poly("x1*x2 - 1", nvars=3),
        parse_poly("x0 - 2*x2", nvars=3),
    ]
    composed = p.compose(args)
    arg_values = [a.evaluate(pt) for a in args]
    assert composed.evaluate(pt) == p.evaluate(arg_values)


# ---- normalization, divisibility, incidence ----

@given(polys())
def test_primitive_normalization_is_idempotent_and_proportional(p):
    n = p.primitive_normalized()
    if p.is_zero():
        assert n.is_zero()
        return
    assert n.content() == 1
    assert n.leading_coefficient() > 0
    assert n.proportional(p)
    assert n.primitive_normalized() == n


@given(polys(max_degree=2, max_terms=3), st.tuples(rationals, rationals, rationals))
def test_divides_recovers_the_cofactor(p, coeffs):
    form = linear_form(3, coeffs)
    if form.is_zero():
        return
    quotient = divides(form, form * p)
    assert quotient == p


def test_divides_returns_none_on_nondivisible_input():
    form = parse_poly("x0 + x1")
    assert divides(form, parse_poly("x0^2 + x1^2")) is None
    assert divides(form, parse_poly("x0^2 - x1^2")) == parse_poly("x0 - x1")


def test_linear_coefficients_round_trip():
    form = linear_form(4, [1, Fraction(-2, 3), 0, 5])
    assert linear_coefficients(form) == [1, Fraction(-2, 3), 0, 5]
    with pytest.raises(ValueError):
        linear_coefficients(parse_poly("x0^2"))


def test_projective_equality_ignores_scale():
    assert projectively_equal([2, -4, 6], [1, -2, 3])
    assert not projectively_equal([1, 0, 0], [1, 0, 1])
    with pytest.raises(ValueError):
        projectively_equal([0, 0, 0], [1, 0, 0])


def test_vanishing_on_a_line_matches_hand_checked_cases():
    # x0*x2 vanishes identically on the line {x2 = 0} spanned by the first
    # two coordinate points, but on the span of (1,0,0) and (0,0,1) it
    # restricts to s*t, which is not the zero form.
    p = parse_poly("x0*x2")
    assert vanishes_on_line(p, [1, 0, 0], [0, 1, 0])
    assert not vanishes_on_line(p, [1, 0, 0], [0, 0, 1])
    conic = parse_poly("x0*x2 - x1^2")
    assert not vanishes_on_line(conic, [1, 0, 0], [0, 0, 1])


# ---- polynomial matrices ----

def _matrix_from_strings(rows):
    return PolyMatrix(3, [[parse_poly(s, nvars=3) for s in row] for row in rows])


def test_determinant_of_triangular_matrix_is_diagonal_product():
    m = _matrix_from_strings(
        [["x0", "x1^2", "5"], ["0", "x1", "x2"], ["0", "0", "x0 - x2"]]
    )
    assert m.det() == parse_poly("x0^2*x1 - x0*x1*x2")


def test_determinant_is_alternating_and_linear_in_rows():
    rows = [["x0", "x1", "1"], ["x2", "x0", "x1"], ["1", "x2", "x0"]]
    m = _matrix_from_strings(rows)
    swapped = _matrix_from_strings([rows[1], rows[0], rows[2]])
    assert swapped.det() == -m.det()
    scaled = _matrix_from_strings([rows[0], rows[1], rows[2]])
    scaled = PolyMatrix(
        3,
        [
            [scaled.entry(0, j) for j in range(3)],
            [scaled.entry(1, j).scale(7) for j in range(3)],
            [scaled.entry(2, j) for j in range(3)],
        ],
    )
    assert scaled.det() == m.det().scale(7)


@given(points)
@settings(max_examples=30)
def test_polynomial_determinant_agrees_with_scalar_determinant(pt):
    m = _matrix_from_strings(
        [
            ["x0 + 1", "x1", "x2^2"],
            ["x2", "x0*x1", "1"],
            ["x1 - x2", "2", "x0"],
        ]
    )
    evaluated = [
        [m.entry(i, j).evaluate(pt) for j in range(3)] for i in range(3)
    ]
    assert m.det().evaluate(pt) == linalg.det(evaluated)
