import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmheight import IntPoly1, RealBall, cyclotomic_polynomial, isolate_roots, kronecker_test, log_mahler_1d

# frozen from mpmath.polyroots at 60 digits (independent of the package)
GOLDEN_LOG_M = "0.481211825059603447497758913424368423135184334385660519661018"
LEHMER_LOG_M = "0.162357612007738139432198803554965807707862700306207206316669"
LEHMER = IntPoly1.parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1")


def _oracle_log_m(P):
    mpmath.mp.dps = 50
    cs = list(reversed(P.coeffs))
    roots = mpmath.polyroots(cs, maxsteps=400, extraprec=300)
    return mpmath.log(abs(cs[0])) + sum(mpmath.log(max(1, abs(r))) for r in roots)


def _contains_decimal(ball, text):
    mpmath.mp.dps = 70
    return ball.contains(mpmath.mpf(text)._mpf_)


def test_golden_ratio_polynomial():
    m = log_mahler_1d(IntPoly1.parse("x^2 - x - 1"))
    assert abs(m.mid_float() - float(GOLDEN_LOG_M)) < 1e-12
    assert m.rad_float() < 1e-40


def test_lehmer_polynomial():
    m = log_mahler_1d(LEHMER)
    assert abs(m.mid_float() - float(LEHMER_LOG_M)) < 1e-9
    assert _contains_decimal(m.add_error(1e-55), LEHMER_LOG_M)


def test_roots_contain_oracle_roots():
    P = IntPoly1.parse("x^5 - 3*x^4 + x^2 - 7")
    balls = isolate_roots(P, prec=128)
    assert len(balls) == 5
    mpmath.mp.dps = 40
    for r in mpmath.polyroots(list(reversed(P.coeffs)), maxsteps=200, extraprec=200):
        assert sum(1 for b in balls if b.re.contains(mpmath.mpf(r.real)._mpf_) and b.im.contains(mpmath.mpf(r.imag)._mpf_)) == 1


def test_roots_repeat_by_multiplicity():
    balls = isolate_roots(IntPoly1.parse("(x-1)^3*(x^2+1)"), prec=96)
    assert len(balls) == 5
    assert sum(1 for b in balls if b.re.contains(1) and b.im.contains(0)) == 3


def _random_poly(rng, deg):
    cs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    if cs[0] == 0:
        cs[0] = 1
    return IntPoly1(cs)


def test_root_sum_lies_in_mahler_ball():
    rng = random.Random(2024)
    for _ in range(100):
        P = _random_poly(rng, rng.randint(1, 12))
        roots = isolate_roots(P, prec=128)
        prec = 128
        acc = RealBall.exact(abs(P.lc), prec).log()
        for r in roots:
            acc = acc + r.abs().log_plus()
        m = log_mahler_1d(P, prec=prec)
        assert m.overlaps(acc)
        assert m.add_error(1e-30).contains(_oracle_log_m(P)._mpf_)


polys = st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0 and c[0] != 0)


@given(polys, polys)
def test_mahler_measure_is_multiplicative(a, b):
    P, Q = IntPoly1(a), IntPoly1(b)
    assert log_mahler_1d(P * Q, prec=128).overlaps(log_mahler_1d(P, prec=128) + log_mahler_1d(Q, prec=128))


@pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 8, 12, 30])
def test_kronecker_positive_implies_zero_measure(m):
    P = cyclotomic_polynomial(m) * IntPoly1([0, 1])
    assert kronecker_test(P)
    assert log_mahler_1d(P).contains(0)


@pytest.mark.parametrize("text", ["x^2 - 2", "2*x - 1", "x^2 - x - 1", "x^3 - x - 1"])
def test_kronecker_negative(text):
    assert not kronecker_test(IntPoly1.parse(text))


def test_lehmer_is_not_kronecker():
    assert not kronecker_test(LEHMER)


def test_measure_of_ball_coefficients_with_uncertain_lead():
    from gmheight import IndeterminateDegree

    lead = RealBall.exact(0).add_error(1e-3)
    with pytest.raises(IndeterminateDegree):
        log_mahler_1d([RealBall.exact(1), lead])
