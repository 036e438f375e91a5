"""Jet matrices, jet-space dimensions and the obstruction index of a point."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import DomainError, InternalError
from .fields import FieldElement, NumberField, compositum
from .heights import Point2
from .kpoly import KPoly2
from .linalg import integer_kernel, integer_rows, lll_reduce, nullspace_q, rank_q
from .polys import IntPoly2

Monomial = Tuple[int, int]


def monomials_upto(L: int) -> List[Monomial]:
    """Exponents ``(i, j)`` with ``i + j <= L``, by total degree then decreasing ``i``."""
    return [(d - j, j) for d in range(L + 1) for j in range(d + 1)]


def derivative_indices(T: int) -> List[Monomial]:
    return monomials_upto(T - 1) if T >= 1 else []


def _power_table(base: FieldElement, top: int) -> List[FieldElement]:
    out = [base.field.one()]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


@dataclass
class JetMatrix:
    """Rows: (derivative index, basis coordinate).  Columns: monomials of degree <= L.

    For a cyclotomic base field ``k`` each monomial contributes ``phi(m)`` columns,
    one per power of ``zeta`` in the power basis of ``k``.
    """

    rows: List[List[Fraction]]
    columns: List[Monomial]
    lambdas: List[Monomial]
    field_degree: int
    base_degree: int = 1

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.columns) * self.base_degree

    def rank(self) -> int:
        return rank_q(self.rows) if self.rows else 0

    def integer_rows(self) -> List[List[int]]:
        return [r for r in integer_rows(self.rows) if any(r)]


def jet_matrix(p: Point2, L: int, T: int, k: Optional[NumberField] = None) -> JetMatrix:
    """Exact matrix of ``binom(mu, lambda) * alpha^(mu - lambda)`` expanded over Q."""
    if L < 0 or T < 0:
        raise DomainError("L and T must be nonnegative")
    cols = monomials_upto(L)
    lams = derivative_indices(T)
    if k is None or k.degree == 1:
        field, x, y, zeta_pows = p.field, p.x, p.y, [p.field.one()]
    else:
        field, ep, ek = compositum(p.field, k)
        x, y = ep(p.x), ep(p.y)
        z = ek(k.gen())
        zeta_pows = _power_table(z, k.degree - 1)
    xp = _power_table(x, L)
    yp = _power_table(y, L)
    D = field.degree
    rows: List[List[Fraction]] = []
    for la, lb in lams:
        block = [[Fraction(0)] * (len(cols) * len(zeta_pows)) for _ in range(D)]
        for c, (i, j) in enumerate(cols):
            if i < la or j < lb:
                continue
            base = xp[i - la] * yp[j - lb] * (math.comb(i, la) * math.comb(j, lb))
            for s, zs in enumerate(zeta_pows):
                e = base * zs if s else base
                for r in range(D):
                    block[r][c * len(zeta_pows) + s] = e.coords[r]
        rows.extend(block)
    return JetMatrix(rows, cols, lams, D, len(zeta_pows))


def jet_space_dim(p: Point2, L: int, T: int, k: Optional[NumberField] = None) -> int:
    """``dim_k`` of the polynomials of degree <= L vanishing to order >= T at ``p``."""
    J = jet_matrix(p, L, T, k)
    N = len(J.columns)
    if not J.rows:
        return N
    r = J.rank()
    total = N * J.base_degree - r
    if total % J.base_degree:
        raise InternalError("kernel dimension over Q is not a multiple of [k:Q]")
    return total // J.base_degree


def extension_degree(p: Point2, k: Optional[NumberField] = None) -> int:
    """``[k(alpha) : k]``."""
    if k is None or k.degree == 1:
        return p.generated_degree
    field, ep, ek = compositum(p.field, k)
    x, y = ep(p.x), ep(p.y)
    z = ek(k.gen())
    gens = []
    zp = _power_table(z, k.degree - 1)
    for i in range(p.minpoly_x.degree):
        for j in range(p.minpoly_y.degree):
            m = x**i * y**j
            gens.extend(m * w for w in zp)
    return rank_q([list(g.coords) for g in gens]) // k.degree


def _primitive(v: List[int]) -> List[int]:
    c = math.gcd(*v)
    v = [a // c for a in v]
    first = next(a for a in v if a)
    return [-a for a in v] if first < 0 else v


def _witness_key(v: List[int], cols: List[Monomial]):
    """Degree, number of terms, height, then coefficients in graded-lex order."""
    deg = max(i + j for (i, j), a in zip(cols, v) if a)
    terms = sum(1 for a in v if a)
    height = max(abs(a) for a in v)
    order = sorted(range(len(cols)), key=lambda c: (-(cols[c][0] + cols[c][1]), -cols[c][0]))
    return (deg, terms, height, tuple(v[c] for c in order))


def _candidates_q(J: JetMatrix) -> List[List[int]]:
    n = len(J.columns)
    rational = nullspace_q(J.rows, n)
    cands = [_primitive(r) for r in integer_rows(rational)]
    if cands:
        kern = integer_kernel(J.integer_rows(), n)
        red = lll_reduce(kern)
        cands.extend(_primitive(v) for v in red if any(v))
        small = red[:6]
        for a, b in itertools.combinations(range(len(small)), 2):
            for s in (1, -1):
                v = [x + s * y for x, y in zip(small[a], small[b])]
                if any(v):
                    cands.append(_primitive(v))
    return cands


def _vector_to_poly(v: List[int], cols: List[Monomial]) -> IntPoly2:
    return IntPoly2({m: a for m, a in zip(cols, v) if a}).primitive_part()


def obstruction_index(p: Point2, k: Optional[NumberField] = None) -> Tuple[int, Union[IntPoly2, KPoly2]]:
    """Smallest degree ``omega`` of a nonzero polynomial over ``k`` vanishing at ``p``, with a witness."""
    D = extension_degree(p, k)
    limit = math.isqrt(4 * D) + 1
    cyclo = k is not None and k.degree > 1
    for L in range(1, limit + 1):
        J = jet_matrix(p, L, 1, k)
        N = len(J.columns)
        if not cyclo:
            cands = _candidates_q(J)
            if cands:
                best = min(cands, key=lambda v: _witness_key(v, J.columns))
                return L, _vector_to_poly(best, J.columns)
            continue
        phi = J.base_degree
        kern = nullspace_q(J.rows, N * phi)
        if kern:
            polys = []
            for v in integer_rows(kern):
                terms = {}
                for c, mono in enumerate(J.columns):
                    terms[mono] = k.element(v[c * phi : (c + 1) * phi])
                F = KPoly2(k, terms)
                inv = next(iter(F.terms.values())).inverse()
                polys.append(F.map_coefficients(lambda c: c * inv))
            best = min(polys, key=lambda F: (F.total_degree, len(F.terms), F.to_text()))
            return L, best
    raise InternalError(f"no polynomial of degree <= {limit} vanishes at the point")
