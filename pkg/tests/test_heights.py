import math
from fractions import Fraction

import mpmath
import pytest

from corpus import corpus_points, encloses
from gmheight import DomainError, RealBall, NumberField, Point2, height_algebraic, is_torsion_point, point_height, power_point
from gmheight.heights import finite_contribution, finite_part_equation_order

CORPUS = corpus_points()


def _close(ball, value, tol):
    return abs(ball.mid_float() - value) <= tol


@pytest.mark.parametrize(
    "minpoly, expected",
    [
        ("x - 3", lambda: mpmath.log(3)),
        ("2*x - 1", lambda: mpmath.log(2)),
        ("x^2 - 2", lambda: mpmath.log(2) / 2),
        ("x + 1", lambda: mpmath.mpf(0)),
    ],
)
def test_height_of_algebraic_numbers(minpoly, expected):
    mpmath.mp.dps = 80
    h = height_algebraic(minpoly, 256)
    assert encloses(h, expected())
    assert h.rad_float() <= 1e-20


@pytest.mark.parametrize("minpoly", ["x^2 - 4", "2*x^2 - 4", "x"])
def test_height_rejects_bad_minimal_polynomials(minpoly):
    with pytest.raises(DomainError):
        height_algebraic(minpoly)


def test_rational_point_oracle():
    # for rationals h(1 : x : y) = log max |a|,|b|,|c| with (a:b:c) coprime integers
    for x, y in [(2, 3), (Fraction(1, 2), 3), (Fraction(2, 3), Fraction(5, 7)), (7, Fraction(1, 7))]:
        x, y = Fraction(x), Fraction(y)
        den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        vec = [den, int(x * den), int(y * den)]
        assert point_height(Point2.rational(x, y)).contains(Fraction(0)) is False
        mpmath.mp.dps = 60
        assert encloses(point_height(Point2.rational(x, y)), mpmath.log(max(abs(v) for v in vec)))


@pytest.mark.parametrize("name, point, torsion", CORPUS, ids=[c[0] for c in CORPUS])
def test_sandwich_between_coordinate_heights(name, point, torsion):
    h = point_height(point)
    hx = height_algebraic(point.minpoly_x)
    hy = height_algebraic(point.minpoly_y)
    # equality cases leave the comparison undecided; a certified violation never occurs
    assert h.ge(hx.max(hy)) is not False
    assert h.le(hx + hy) is not False


@pytest.mark.parametrize("name, point, torsion", CORPUS, ids=[c[0] for c in CORPUS])
def test_torsion_characterized_by_zero_height(name, point, torsion):
    assert is_torsion_point(point) == torsion
    h = point_height(point)
    if torsion:
        assert h.contains(0)
    else:
        assert h.gt(0) is True


@pytest.mark.parametrize("name, point, torsion", CORPUS[:12], ids=[c[0] for c in CORPUS[:12]])
@pytest.mark.parametrize("l", [1, 2, 3, 5])
def test_height_scales_under_powers(name, point, torsion, l):
    assert point_height(power_point(point, l)).overlaps(point_height(point) * l)


@pytest.mark.parametrize("name, point, torsion", CORPUS, ids=[c[0] for c in CORPUS])
def test_swap_invariance(name, point, torsion):
    assert point_height(point.swap()).overlaps(point_height(point))


def test_same_point_in_larger_field():
    small = CORPUS[2][1]
    K = NumberField.cyclotomic(24)
    big = Point2(K, K.parse("t^3 + t^21"), K.parse("t^2 + t^22"))
    assert big.x * big.x == 2 and big.y * big.y == 3
    assert point_height(big).overlaps(point_height(small))


@pytest.mark.parametrize("x, y", [("t", "2*t+3"), ("t/3", "(t+1)/2"), ("(2*t-1)/5", "7"), ("t/4", "t/6")])
def test_equation_order_agrees_with_norm_content_when_order_is_maximal(x, y):
    # t^2 - t - 1 has square-free discriminant 5, so Z[t] is the full ring of integers
    K = NumberField("t^2-t-1")
    p = Point2(K, K.parse(x), K.parse(y))
    exact = -RealBall.exact(finite_contribution(p)).log() / K.degree
    assert finite_part_equation_order(p).overlaps(exact)


def test_acceptance_points():
    mpmath.mp.dps = 60
    cases = [(CORPUS[0][1], mpmath.log(3)), (CORPUS[1][1], mpmath.log(6)), (CORPUS[2][1], mpmath.log(3) / 2)]
    for p, expected in cases:
        h = point_height(p)
        assert h.rad_float() <= 1e-12
        assert encloses(h, expected)


def test_json_round_trip():
    p = CORPUS[2][1]
    q = Point2.from_json('{"field": "t^4-10*t^2+1", "x": "(t^3-9*t)/2", "y": "(11*t-t^3)/2"}')
    assert p == q
    assert Point2.from_dict(p.to_dict()) == p


def test_zero_coordinate_rejected():
    with pytest.raises(DomainError):
        Point2.rational(0, 3)


def test_power_rejects_nonpositive_exponent():
    with pytest.raises(DomainError):
        power_point(CORPUS[0][1], 0)
