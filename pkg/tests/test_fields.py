from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmheight import DomainError, IntPoly1, NumberField, compositum, minimal_polynomial
from gmheight.fields import poly_eval

BIQUAD = NumberField("t^4-10*t^2+1")
coords = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=4, max_size=4)


def test_reducible_generator_rejected():
    with pytest.raises(DomainError):
        NumberField("t^2-4")


def test_non_monic_generator_rejected():
    with pytest.raises(DomainError):
        NumberField("2*t^2-1")


def test_sqrt2_and_sqrt3_in_biquadratic_field():
    s2 = BIQUAD.parse("(t^3-9*t)/2")
    s3 = BIQUAD.parse("(11*t-t^3)/2")
    assert s2 * s2 == 2
    assert s3 * s3 == 3
    assert minimal_polynomial(BIQUAD.gen()) == IntPoly1.parse("x^4 - 10*x^2 + 1")
    assert minimal_polynomial(s2 + s3) == IntPoly1.parse("x^4 - 10*x^2 + 1")
    assert minimal_polynomial(s2 * s3) == IntPoly1.parse("x^2 - 6")
    assert minimal_polynomial(BIQUAD(Fraction(3, 2))) == IntPoly1.parse("2*x - 3")


@given(coords, coords)
def test_field_axioms(a, b):
    u, v = BIQUAD.element(a), BIQUAD.element(b)
    assert u * v == v * u
    assert (u + v) * u == u * u + v * u
    if not v.is_zero():
        assert (u / v) * v == u
        assert v * v.inverse() == 1


@given(coords)
def test_minimal_polynomial_vanishes(a):
    e = BIQUAD.element(a)
    P = minimal_polynomial(e)
    assert poly_eval(list(P.coeffs), e).is_zero()
    assert 4 % P.degree == 0


def test_conjugates_match_minimal_polynomial_roots():
    e = BIQUAD.parse("(t^3-9*t)/2")
    conj = e.conjugates(128)
    vals = sorted(round(c.re.mid_float(), 9) for c in conj)
    assert vals == sorted([-1.414213562, -1.414213562, 1.414213562, 1.414213562])


@pytest.mark.parametrize("m1, m2", [(3, 4), (4, 5), (3, 3)])
def test_compositum_embeddings_respect_generators(m1, m2):
    K1, K2 = NumberField.cyclotomic(m1), NumberField.cyclotomic(m2)
    L, e1, e2 = compositum(K1, K2)
    for K, e in ((K1, e1), (K2, e2)):
        assert poly_eval(list(K.g.coeffs), e(K.gen())).is_zero()
    assert L.degree % K1.degree == 0 and L.degree % K2.degree == 0


def test_compositum_with_quadratic_and_biquadratic():
    Kq = NumberField("t^2-2")
    L, eq, eb = compositum(Kq, BIQUAD)
    assert L.degree == 4
    assert eq(Kq.gen()) ** 2 == 2
