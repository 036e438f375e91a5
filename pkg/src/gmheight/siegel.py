"""Auxiliary polynomials: small integer kernel vectors of the jet matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy

from .balls import RealBall, default_precision
from .errors import BoundUnmet, DomainError, InternalError
from .heights import Point2, point_height
from .kpoly import KPoly2
from .linalg import enumerate_short, integer_kernel, lll_reduce
from .obstruction import JetMatrix, jet_matrix, monomials_upto
from .polys import IntPoly2

Poly = Union[IntPoly2, KPoly2]


def _int_height(coeffs: Sequence[int], prec: int) -> RealBall:
    c = math.gcd(*coeffs)
    top = max(abs(a) for a in coeffs)
    return RealBall.exact(Fraction(top, c), prec + 8).log().with_prec(prec)


def polynomial_height(F: Poly, prec: Optional[int] = None) -> RealBall:
    """Projective Weil height of the coefficient vector of ``F``."""
    prec = prec or default_precision()
    if F.is_zero():
        raise DomainError("height of the zero polynomial")
    if isinstance(F, KPoly2) and F.is_rational():
        F = F.to_int()
    if isinstance(F, IntPoly2):
        return _int_height([c for _, c in F.terms], prec)
    return _field_vector_height(list(F.terms.values()), prec)


def _field_vector_height(coeffs, prec: int) -> RealBall:
    """``(1/d)(sum_sigma log max_i |sigma c_i| - log content(norm(sum c_i z^i)))``."""
    k = coeffs[0].field
    work = prec + 16
    conj = [c.conjugates(work) for c in coeffs]
    arch = RealBall.zero(work)
    for s in range(k.degree):
        m = conj[0][s].abs()
        for cs in conj[1:]:
            m = m.max(cs[s].abs())
        arch = arch + m.log()
    t, z = sympy.symbols("t z")
    g = sympy.Poly(k.g.to_sympy(t).as_expr(), t, z, domain="QQ")
    expr = 0
    for i, c in enumerate(coeffs):
        expr += sum(sympy.Rational(a.numerator, a.denominator) * t**e for e, a in enumerate(c.coords)) * z**i
    norm = sympy.Poly(sympy.resultant(g, sympy.Poly(expr, t, z, domain="QQ"), t), z, domain="QQ")
    num, den = 0, 1
    for a in norm.all_coeffs():
        if a:
            num = math.gcd(num, int(a.p))
            den = den * int(a.q) // math.gcd(den, int(a.q))
    content = Fraction(num, den)
    total = arch - RealBall.exact(content, work + 8).log()
    return (total / k.degree).clip_nonnegative().with_prec(prec)


@dataclass
class SiegelResult:
    F: Poly
    L: int
    T: int
    height_F: RealBall
    bound: RealBall
    met_bound: bool
    details: dict = field(default_factory=dict)


def corollary_degree(T: int, D: int, omega: int) -> int:
    """``min(2 omega T^2, ceil(sqrt(T D) (T + 1)))`` computed exactly."""
    n = T * D * (T + 1) ** 2
    r = math.isqrt(n)
    if r * r < n:
        r += 1
    return min(2 * omega * T * T, r)


def corollary_bound(T: int, L: int, h_alpha: RealBall) -> RealBall:
    prec = h_alpha.prec
    logL = RealBall.exact(L + 1, prec + 8).log().with_prec(prec)
    return ((T + 1) * logL + h_alpha * L) / (T - 1)


def _search(J: JetMatrix, bound: RealBall, prec: int, max_nodes: int):
    """Shortest-found integer kernel vector and whether its height meets ``bound``."""
    n = len(J.columns)
    kern = integer_kernel(J.integer_rows(), n)
    if not kern:
        raise InternalError("jet matrix has a trivial kernel")
    red = lll_reduce(kern)

    def key(v):
        c = math.gcd(*v)
        return (Fraction(max(abs(a) for a in v), c), sum(1 for a in v if a), tuple(v))

    best = min((v for v in red if any(v)), key=key)
    h = _int_height(best, prec)
    info = {"kernel_rank": len(kern), "enumerated": False}
    if h.le(bound) is True:
        return best, h, True, info
    # exhaustive pass: every vector with sup norm <= e^bound has l2 norm <= sqrt(n) e^bound
    cap = bound.upper()
    from mpmath import libmp

    sup = int(libmp.to_int(libmp.mpf_exp(cap, 64, libmp.round_ceiling), libmp.round_ceiling))
    radius2 = min(sum(a * a for a in best), n * sup * sup)
    info["enumerated"] = True
    for v in enumerate_short(red, radius2, max_nodes=max_nodes):
        if key(v) < key(best):
            best = v
    h = _int_height(best, prec)
    return best, h, h.le(bound) is True, info


def construct_auxiliary(
    p: Point2,
    T: int,
    omega: int,
    prec: Optional[int] = None,
    max_nodes: int = 200000,
) -> SiegelResult:
    """Nonzero ``F`` in ``Z[x, y]`` of degree <= L vanishing to order >= T at ``p``.

    ``L`` follows the single-point schedule with ``D = [Q(alpha):Q]`` and the
    height of ``F`` is compared with ``((T+1) log(L+1) + L h(alpha)) / (T-1)``.
    """
    from .extrapolation import vanishing_order

    if not isinstance(T, int) or T < 2:
        raise DomainError("construct_auxiliary needs T >= 2")
    if omega < 1:
        raise DomainError("omega must be positive")
    prec = prec or default_precision()
    D = p.generated_degree
    L = corollary_degree(T, D, omega)
    J = jet_matrix(p, L, T)
    h_alpha = point_height(p, prec)
    bound = corollary_bound(T, L, h_alpha)
    vec, h, met, info = _search(J, bound, prec, max_nodes)
    F = IntPoly2({m: a for m, a in zip(J.columns, vec) if a}).primitive_part()
    if not met:
        raise BoundUnmet(f"best auxiliary polynomial has height {h!r} > {bound!r}", best=F)
    order = vanishing_order(F, p, T)
    if order < T or F.total_degree > L:
        raise InternalError("auxiliary polynomial fails its vanishing or degree constraint")
    info.update({"D": D, "omega": omega, "vanishing_order": order})
    return SiegelResult(F, L, T, h, bound, met, info)


def construct_auxiliary_multi(
    points: Sequence[Point2],
    L: int,
    T: int,
    theta: RealBall,
    prec: Optional[int] = None,
    max_nodes: int = 200000,
) -> SiegelResult:
    """Several-point variant compared against ``r/(N-r)((T+1) log(L+1) + L theta)``."""
    prec = prec or default_precision()
    rows = []
    for pt in points:
        rows.extend(jet_matrix(pt, L, T).rows)
    cols = monomials_upto(L)
    J = JetMatrix(rows, cols, [], 0)
    N = len(cols)
    r = J.rank()
    if r >= N:
        raise DomainError("no nonzero polynomial of this degree vanishes at every point")
    logL = RealBall.exact(L + 1, prec + 8).log().with_prec(prec)
    bound = ((T + 1) * logL + theta * L) * Fraction(r, N - r)
    vec, h, met, info = _search(J, bound, prec, max_nodes)
    F = IntPoly2({m: a for m, a in zip(cols, vec) if a}).primitive_part()
    if not met:
        raise BoundUnmet("multi-point construction missed its bound", best=F)
    info.update({"rank": r, "N": N})
    return SiegelResult(F, L, T, h, bound, met, info)
