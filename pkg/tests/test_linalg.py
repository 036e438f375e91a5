from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given
from hypothesis import strategies as st

from gmheight.linalg import (
    enumerate_short,
    hnf,
    integer_kernel,
    lattice_index,
    lll_reduce,
    nullspace_q,
    rank_q,
    solve_q,
)

entries = st.integers(-9, 9)


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def _gram_schmidt(B):
    out = []
    for b in B:
        v = [Fraction(a) for a in b]
        for u in out:
            uu = sum(a * a for a in u)
            mu = sum(a * c for a, c in zip(b, u)) / uu
            v = [a - mu * c for a, c in zip(v, u)]
        out.append(v)
    return out


@given(matrices(3, 5))
def test_rank_matches_sympy(A):
    assert rank_q(A) == sympy.Matrix(A).rank()


@given(matrices(3, 6))
def test_nullspace_vectors_are_in_kernel(A):
    ns = nullspace_q(A, 6)
    assert len(ns) == 6 - sympy.Matrix(A).rank()
    for v in ns:
        assert all(sum(Fraction(a) * c for a, c in zip(row, v)) == 0 for row in A)


@given(matrices(3, 6))
def test_integer_kernel_is_saturated_basis(A):
    K = integer_kernel(A, 6)
    assert len(K) == 6 - sympy.Matrix(A).rank()
    for v in K:
        assert all(sum(a * c for a, c in zip(row, v)) == 0 for row in A)
    if K:
        # saturated: the elementary divisors of the kernel basis are all 1
        snf = smith_normal_form(sympy.Matrix(K), domain=sympy.ZZ)
        assert all(abs(snf[i, i]) == 1 for i in range(len(K)))


@given(matrices(4, 4))
def test_lll_preserves_lattice_and_is_reduced(B):
    if sympy.Matrix(B).det() == 0:
        return
    R = lll_reduce(B)
    assert hnf(R) == hnf(B)
    assert lattice_index(R) == abs(sympy.Matrix(B).det())
    G = _gram_schmidt(R)
    for k in range(1, len(R)):
        gk = sum(a * a for a in G[k])
        gk1 = sum(a * a for a in G[k - 1])
        mu = sum(a * c for a, c in zip(R[k], G[k - 1])) / gk1
        assert abs(mu) <= Fraction(1, 2)
        assert gk >= (Fraction(99, 100) - mu * mu) * gk1


def test_solve_q():
    A = [[2, 1], [1, 3]]
    assert solve_q(A, [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


def test_enumeration_finds_every_short_vector():
    B = lll_reduce([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    found = {tuple(v) for v in enumerate_short(B, 2)}
    expected = {v for v in
                ((a, b, 2 * c) for a in range(-2, 3) for b in range(-2, 3) for c in range(-1, 2))
                if 0 < sum(t * t for t in v) <= 2}
    assert {v for v in found} | {tuple(-t for t in v) for v in found} == expected
