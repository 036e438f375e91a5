import pytest

from corpus import corpus_points
from gmheight import (
    DomainError,
    RealBall,
    construct_auxiliary,
    construct_auxiliary_multi,
    obstruction_index,
    point_height,
    polynomial_height,
)
from gmheight.extrapolation import vanishing_order
from gmheight.siegel import corollary_degree

CORPUS = corpus_points()


def test_corollary_degree_exact_ceiling():
    assert corollary_degree(2, 4, 2) == 9  # ceil(sqrt 8 * 3) = ceil(8.485)
    assert corollary_degree(2, 1, 1) == 5  # ceil(sqrt 2 * 3) = ceil(4.243)
    assert corollary_degree(67, 4, 16) == 1114
    assert corollary_degree(2, 100, 1) == 8  # 2 omega T^2 wins


@pytest.mark.parametrize("index, T, omega, L", [(2, 2, 2, 9), (0, 2, 1, 5)])
def test_acceptance_cases(index, T, omega, L):
    point = CORPUS[index][1]
    res = construct_auxiliary(point, T, omega)
    assert res.L == L
    assert res.F.total_degree <= L
    assert vanishing_order(res.F, point, T) >= T
    expected = (RealBall.exact(L + 1).log() * (T + 1) + point_height(point) * L) / (T - 1)
    assert res.bound.overlaps(expected)
    assert res.height_F.le(res.bound) is True


@pytest.mark.parametrize("name, point, torsion", CORPUS[:14], ids=[c[0] for c in CORPUS[:14]])
def test_corpus_heights_meet_bound(name, point, torsion):
    omega, _ = obstruction_index(point)
    res = construct_auxiliary(point, 2, omega)
    assert res.met_bound
    assert res.height_F.le(res.bound) is True
    assert vanishing_order(res.F, point, 2) >= 2


def test_polynomial_height():
    from gmheight import IntPoly2

    assert polynomial_height(IntPoly2.parse("2*x - 4*y + 6")).contains(0) is False
    h = polynomial_height(IntPoly2.parse("2*x - 4*y + 6"))
    assert h.overlaps(RealBall.exact(3).log())


def test_rejects_small_T():
    with pytest.raises(DomainError):
        construct_auxiliary(CORPUS[0][1], 1, 1)


def test_multi_point_variant():
    pts = [CORPUS[0][1], CORPUS[1][1]]
    theta = point_height(pts[0]).max(point_height(pts[1]))
    res = construct_auxiliary_multi(pts, 4, 2, theta)
    for p in pts:
        assert vanishing_order(res.F, p, 2) >= 2
    assert res.height_F.le(res.bound) is True
