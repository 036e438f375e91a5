import math

import pytest

from corpus import corpus_points
from gmheight import IntPoly2, NumberField, extension_degree, jet_matrix, jet_space_dim, obstruction_index
from gmheight.extrapolation import vanishing_order

CORPUS = corpus_points()


def _omega_cases():
    return [(name, p) for name, p, _ in CORPUS]


@pytest.mark.parametrize("name, point", _omega_cases(), ids=[c[0] for c in CORPUS])
def test_obstruction_index_bounds_and_witness(name, point):
    omega, witness = obstruction_index(point)
    D = point.generated_degree
    assert 1 <= omega <= math.isqrt(4 * D) + 1
    assert witness.total_degree == omega
    assert witness(point.x, point.y) == 0
    assert vanishing_order(witness, point, 1) >= 1


@pytest.mark.parametrize("name, point", _omega_cases()[:10], ids=[c[0] for c in CORPUS[:10]])
def test_jet_dimension_lower_bound(name, point):
    omega, _ = obstruction_index(point)
    for T in (1, 2, 3):
        for L in range(T * omega, T * omega + 3):
            assert jet_space_dim(point, L, T) >= math.comb(L - T * omega + 2, 2)


def test_biquadratic_example():
    point = CORPUS[2][1]
    omega, witness = obstruction_index(point)
    assert omega == 2
    assert witness == IntPoly2.parse("x^2 - 2")
    assert point.generated_degree == 4


def test_rational_example_prefers_fewest_terms():
    omega, witness = obstruction_index(CORPUS[0][1])
    assert omega == 1
    assert witness == IntPoly2.parse("x - 2")


def test_jet_matrix_shape():
    point = CORPUS[2][1]
    J = jet_matrix(point, 3, 2)
    assert J.shape == (3 * 4, 10)
    assert J.rank() == 10 - jet_space_dim(point, 3, 2)


def test_over_cyclotomic_field():
    point = CORPUS[2][1]
    k = NumberField.cyclotomic(8)  # contains sqrt 2
    assert extension_degree(point, k) == 2
    omega, witness = obstruction_index(point, k)
    assert omega == 1
    assert witness.total_degree == 1
    assert jet_space_dim(point, 2, 1, k) >= math.comb(2 - 1 + 2, 2)
