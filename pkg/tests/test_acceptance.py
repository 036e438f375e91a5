"""End-to-end acceptance checks, one test per criterion, each under its time limit."""

import math

import mpmath
import pytest

from corpus import corpus_curves, corpus_points, encloses
from gmheight import (
    Curve,
    IntPoly1,
    IntPoly2,
    KPoly2,
    NumberField,
    Point2,
    RealBall,
    audit_inequalities,
    bound_value,
    construct_auxiliary,
    ecc_cardinality_ok,
    ecc_primes,
    extrapolation_report,
    frobenius_apply,
    height_algebraic,
    jet_space_dim,
    log_mahler_1d,
    normalized_height_curve,
    obstruction_index,
    param_schedule,
    point_height,
    polynomial_height,
    power_image,
    verify_bound,
)
from gmheight.bounds import audit_lemma_III2
from gmheight.extrapolation import vanishing_order

POINTS = corpus_points()
SQRT_POINT = POINTS[2][1]
GOLDEN = ("0.481211825059603447497758913424368423135184334385660519661018")
LEHMER = ("0.162357612007738139432198803554965807707862700306207206316669")
LINE = 0.323065947219450514093636510723806394072241840780587016130868


def setup_module():
    mpmath.mp.dps = 60


def test_criterion_1_univariate_heights(criterion):
    with criterion(1, "heights of x-3, 2x-1, x^2-2 at 256 bits", 1):
        for poly, value in [("x-3", mpmath.log(3)), ("2*x-1", mpmath.log(2)), ("x^2-2", mpmath.log(2) / 2)]:
            h = height_algebraic(poly, 256)
            assert h.rad_float() <= 1e-20
            assert encloses(h, value)


def test_criterion_2_point_heights(criterion):
    with criterion(2, "point heights and the sandwich on the corpus", 5):
        cases = [(Point2.rational(2, 3), mpmath.log(3)), (POINTS[1][1], mpmath.log(6)), (SQRT_POINT, mpmath.log(3) / 2)]
        for p, value in cases:
            h = point_height(p)
            assert h.rad_float() <= 1e-12
            assert encloses(h, value)
        for _, p, _ in POINTS[:20]:
            h = point_height(p)
            hx, hy = height_algebraic(p.minpoly_x), height_algebraic(p.minpoly_y)
            assert h.ge(hx.max(hy)) is not False
            assert h.le(hx + hy) is not False


def test_criterion_3_mahler_measures(criterion):
    with criterion(3, "log M of x^2-x-1 and Lehmer's polynomial", 2):
        g = log_mahler_1d(IntPoly1.parse("x^2-x-1"))
        assert abs(g.mid_float() - 0.4812118250) < 1e-10 and encloses(g, GOLDEN)
        l = log_mahler_1d(IntPoly1.parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"))
        assert abs(l.mid_float() - 0.1623576) < 1e-7 and encloses(l, LEHMER)
        assert g.rad_float() <= 1e-12 and l.rad_float() <= 1e-9


@pytest.mark.parametrize(
    "label, curve, check",
    [
        ("xy-1", "x*y-1", lambda h: h.contains(0) and h.rad_float() <= 1e-6),
        ("x+y-5", "x+y-5", lambda h: abs(h.mid_float() - math.log(5)) <= 1e-6),
        ("x+y-1", "x+y-1", lambda h: abs(h.mid_float() - LINE) <= 1e-3 and h.contains(LINE)),
    ],
)
def test_criterion_4_curve_heights(criterion, label, curve, check):
    with criterion(f"4 [{label}]", f"normalized height of {label}", 60):
        assert check(normalized_height_curve(Curve(curve), tol=1e-6))


def test_criterion_5_prime_sieve(criterion):
    with criterion(5, "prime-counting inequality for 41 <= N <= 1e5", 60):
        r = audit_lemma_III2(10**5)
        assert r.verdict == "pass" and r.details["failures"] == []
        assert r.details["checked"] == 10**5 - 40


def test_criterion_6_obstruction(criterion):
    with criterion(6, "obstruction index, witness and jet dimension", 30):
        omega, witness = obstruction_index(SQRT_POINT)
        assert omega == 2 and witness(SQRT_POINT.x, SQRT_POINT.y) == 0
        for _, p, _ in POINTS:
            D = p.generated_degree
            w, W = obstruction_index(p)
            assert w <= math.isqrt(4 * D) + 1
            assert W(p.x, p.y) == 0
        for _, p, _ in POINTS[:8]:
            w, _ = obstruction_index(p)
            for T in (1, 2):
                for L in (T * w, T * w + 2):
                    assert jet_space_dim(p, L, T) >= math.comb(L - T * w + 2, 2)


def test_criterion_7_siegel(criterion):
    with criterion(7, "auxiliary polynomials for (sqrt2, sqrt3) and (2, 3)", 30):
        res = construct_auxiliary(SQRT_POINT, 2, 2)
        assert res.L <= 9
        assert vanishing_order(res.F, SQRT_POINT, 2) >= 2
        cap = RealBall.exact(10).log() * 3 + RealBall.exact(3).log() * 9 / 2
        assert polynomial_height(res.F).le(cap) is True
        res = construct_auxiliary(Point2.rational(2, 3), 2, 1)
        assert res.L == 5
        assert vanishing_order(res.F, Point2.rational(2, 3), 2) >= 2


def test_criterion_8_extrapolation(criterion):
    with criterion(8, "extrapolation inequality and Frobenius round trip", 30):
        for _, p, _ in POINTS[:10]:
            w, _ = obstruction_index(p)
            res = construct_auxiliary(p, 2, w)
            for q in (2, 3, 5):
                rep = extrapolation_report(res.F, p, q, res.T, res.L)
                assert rep.inequality_holds is True
                if rep.epsilon.gt(0) is True:
                    assert rep.T1_observed >= 1
        rep = extrapolation_report(IntPoly2.parse("(x+1)^10"), Point2.rational(-1, -1), 3, 10, 10)
        assert rep.epsilon.gt(0) is True and rep.T1_observed >= 1
        for m, p, q in [(3, 2, 5), (4, 3, 7), (5, 2, 3), (12, 5, 17)]:
            assert (p * q) % m == 1
            k = NumberField.cyclotomic(m)
            F = KPoly2.parse("x^2*y + (t^2 - 3*t)*x*y - t + 2", k)
            assert frobenius_apply(frobenius_apply(F, p, m), q, m) == F


def test_criterion_9_curves(criterion):
    with criterion(9, "power images, exceptional primes and their count", 30):
        assert power_image(Curve("x+y-1"), 2).P == IntPoly2.parse("x^2-2*x*y+y^2-2*x-2*y+1")
        assert ecc_primes(Curve("x^2-2"), 10) == {2}
        for _, C, torsion in corpus_curves():
            if not torsion:
                assert ecc_cardinality_ok(len(ecc_primes(C, 30)), C.degree)


def _rel(ball, ref):
    return abs(ball.mid_float() / ref - 1)


def test_criterion_10_bounds(criterion):
    with criterion(10, "bound values, schedules, verification and the full audit", 120):
        assert _rel(bound_value("theorem2", omega=16), 1.6260298882441371562676213912956e-23) < 1e-3
        assert _rel(bound_value("prop_IV1", D=16), 3.18452694728297580810623211652602e-6) < 1e-3
        assert _rel(bound_value("voutier", D=1), 0.188541366739736891370133269386662751) < 1e-3
        s = param_schedule("section_V1", omega=16, D=4)
        assert (s.T, s.L) == (67, 1114)
        assert verify_bound(Point2.rational(2, 3), "theorem2", curve=Curve("x+y-5")).verdict == "pass"
        assert verify_bound(Curve("x+y-1"), "prop_IV1").verdict == "pass"
        reports = audit_inequalities("all")
        fails = {r.kind: r for r in reports if r.verdict != "pass"}
        assert set(fails) == {"fait_IV4.T_quartic", "fait_V1.ceil_9e2"}
        d = fails["fait_V1.ceil_9e2"].details
        assert (d["claimed_ceiling"], d["computed_ceiling"], d["discrepancy"]) == (66, 67, True)
