from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmheight import IntPoly1, IntPoly2, ParseError, parse_poly

small = st.integers(-20, 20)
coeff_lists = st.lists(small, min_size=1, max_size=7)
bivariate = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), small, min_size=1, max_size=8)


def test_parse_basic_grammar():
    raw = parse_poly("x^2*y - 3/2*x + 1", ("x", "y"))
    assert raw == {(2, 1): 1, (1, 0): Fraction(-3, 2), (0, 0): 1}


def test_parse_parentheses_and_powers():
    assert IntPoly2.parse("(x+y)^2") == IntPoly2.parse("x^2 + 2*x*y + y^2")
    assert IntPoly1.parse("(x-1)*(x+1)") == IntPoly1([-1, 0, 1])


@pytest.mark.parametrize(
    "text, token",
    [("x^2 + 1.5", "1.5"), ("x + $", "$"), ("x +", "<end of input>"), ("x y", "y"), ("z + 1", "z")],
)
def test_parse_errors_name_the_token(text, token):
    with pytest.raises(ParseError) as info:
        IntPoly2.parse(text)
    assert info.value.token == token


def test_rational_coefficients_rejected_for_integer_polys():
    with pytest.raises(ValueError):
        IntPoly2.parse("x/2 + y")


def test_int_poly1_arithmetic():
    p = IntPoly1([1, 1])
    q = IntPoly1([-1, 1])
    assert (p * q).coeffs == (-1, 0, 1)
    assert (p * q).degree == 2
    assert p(3) == 4
    assert IntPoly1([2, 4, 6]).content() == 2
    assert IntPoly1([-2, -4]).primitive_part().coeffs == (1, 2)
    k, r = IntPoly1([0, 0, 1, 1]).strip_x()
    assert k == 2 and r.coeffs == (1, 1)


def test_int_poly2_evaluation_and_derivative():
    F = IntPoly2.parse("x^2*y + 3*y - 1")
    assert F(2, 3) == 20
    assert F.divided_derivative(1, 0) == IntPoly2.parse("2*x*y")
    assert F.divided_derivative(2, 1) == IntPoly2.parse("1")
    assert F.total_degree == 3
    assert F.degree_in(0) == 2 and F.degree_in(1) == 1


def test_text_is_graded_lex():
    assert IntPoly2.parse("1 + y + x + x*y").to_text() == "x*y + x + y + 1"


@given(coeff_lists)
def test_univariate_text_round_trip(cs):
    P = IntPoly1(cs)
    assert IntPoly1.parse(P.to_text(), "x") == P


@given(bivariate)
def test_bivariate_text_round_trip(terms):
    F = IntPoly2(terms)
    if F.is_zero():
        return
    assert IntPoly2.parse(F.to_text()) == F


@given(bivariate, bivariate, st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation_is_a_ring_map(a, b, x, y):
    F, G = IntPoly2(a), IntPoly2(b)
    assert (F * G)(x, y) == F(x, y) * G(x, y)
    assert (F + G)(x, y) == F(x, y) + G(x, y)


@given(coeff_lists, st.lists(small, min_size=2, max_size=4).filter(lambda c: c[-1] != 0))
def test_exact_division(cs, ds):
    P, Q = IntPoly1(cs), IntPoly1(ds)
    prod = P * Q
    assert prod.divmod_exact(Q) == P
    assert Q.divides(prod)
