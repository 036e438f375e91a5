"""Plane curves of the torus: normalized height, torsion test, power images, exceptional primes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

from mpmath import libmp
from sympy import ZZ
from sympy.polys.rings import ring

from .algebra import cyclotomic_order, factor_univariate, gcd1, is_irreducible, primes_upto
from .analytic import kronecker_test, log_mahler_1d
from .balls import ComplexBall, RealBall
from .errors import DomainError, IndeterminateDegree, InternalError, PrecisionExhausted
from .polys import IntPoly1, IntPoly2


@dataclass(frozen=True)
class Curve:
    """Zero locus of a primitive non-monomial integer polynomial ``P(x, y)``."""

    P: IntPoly2
    irreducibility_verdict: str = "unverified"

    def __init__(self, P, check: bool = True):
        P = IntPoly2.parse(P) if isinstance(P, str) else P
        if P.is_zero() or P.total_degree < 1:
            raise DomainError("a curve needs a nonconstant polynomial")
        if P.is_monomial():
            raise DomainError("a monomial does not cut a curve in the torus")
        P = P.primitive_part()
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "irreducibility_verdict", _irreducibility_verdict(P) if check else "unverified")

    @property
    def degree(self) -> int:
        return self.P.total_degree

    def to_text(self, variables=("x", "y")) -> str:
        return self.P.to_text(variables)

    def __repr__(self):
        return f"Curve({self.to_text()!r}, {self.irreducibility_verdict})"


def _irreducibility_verdict(P: IntPoly2) -> str:
    """Specialization check.

    If ``P`` has trivial content as a polynomial in ``v`` over ``Z[w]`` and some
    specialization ``w = c`` keeps the ``v``-degree and is irreducible, then ``P``
    is irreducible over Q.  That case returns "verified".  When no specialization
    decides, a square-free ``P`` gets "probabilistic" only if every trial stayed
    square-free, otherwise "unverified".
    """
    var = 0 if P.degree_in(0) >= 1 else 1
    coeffs = P.coefficients_in(var)
    cont = coeffs[0] if coeffs[0].coeffs else None
    for c in coeffs:
        if c.is_zero():
            continue
        cont = c if cont is None else gcd1(cont, c)
    if cont is not None and cont.degree > 0:
        return "unverified"
    rng = random.Random(20240601)
    trials = [2, 3, 5, -7, 11] + [rng.randint(-1000, 1000) for _ in range(6)]
    deg = P.degree_in(var)
    all_sqfree = True
    for c in trials:
        spec = IntPoly1([q(c) for q in coeffs])
        if spec.degree != deg:
            continue
        if is_irreducible(spec):
            return "verified"
        _, facs = factor_univariate(spec)
        if any(m > 1 for _, m in facs):
            all_sqfree = False
    return "probabilistic" if all_sqfree and deg == 1 else "unverified"


# --------------------------------------------------------------------------- normalized height


_PHASE = 0.1234567891  # fraction of a turn; keeps nodes off rational angles


def _unit_point(k: int, n: int, prec: int) -> ComplexBall:
    frac = libmp.from_rational(k, n, prec + 16, libmp.round_nearest)
    turn = libmp.mpf_add(frac, libmp.from_float(_PHASE), prec + 16)
    angle = libmp.mpf_mul(turn, libmp.mpf_pi(prec + 16), prec + 16)
    angle = libmp.mpf_mul(angle, libmp.from_int(2), prec + 16)
    c, s = libmp.mpf_cos_sin(angle, prec + 8)
    err = libmp.from_man_exp(1, -prec)
    return ComplexBall(RealBall(c, err, prec), RealBall(s, err, prec))


def _node_value(coeff_polys: List[IntPoly1], u: ComplexBall, prec: int) -> RealBall:
    cs = []
    for q in coeff_polys:
        acc = ComplexBall.exact(0, prec)
        for a in reversed(q.coeffs):
            acc = acc * u + ComplexBall.exact(a, prec)
        cs.append(acc)
    while len(cs) > 1 and not coeff_polys[len(cs) - 1].coeffs:
        cs.pop()
    if cs[-1].contains_zero():
        if cs[0].contains_zero():
            raise IndeterminateDegree("node hits both extreme coefficients")
        cs = cs[::-1]
    if len(cs) == 2:
        return cs[0].abs().max(cs[1].abs()).log()
    return log_mahler_1d(cs, prec=prec, tol=2.0 ** (-(prec // 2)))


def normalized_height_curve(
    C: Curve,
    tol: float = 1e-6,
    prec: int = 96,
    max_nodes: int = 1 << 15,
) -> RealBall:
    """Two-variable logarithmic Mahler measure of the curve's equation.

    Jensen's formula in the inner variable, trapezoid rule in the outer one.
    The node count doubles until consecutive estimates agree within ``tol``;
    that gap plus the accumulated ball radii becomes the radius.
    """
    P = C.P
    dx, dy = P.degree_in(0), P.degree_in(1)
    if dx == 0 or dy == 0:
        var = 1 if dx == 0 else 0
        uni = P.coefficients_in(var)
        poly = IntPoly1([q.coeffs[0] if q.coeffs else 0 for q in uni])
        return log_mahler_1d(poly, prec=max(prec, 64))
    inner = 1 if dy <= dx else 0
    coeff_polys = P.coefficients_in(inner)
    values = {}

    def estimate(n: int) -> RealBall:
        acc = RealBall.zero(prec)
        step = (1 << 30) // n
        for k in range(n):
            key = k * step
            if key not in values:
                values[key] = _node_value(coeff_polys, _unit_point(key, 1 << 30, prec), prec)
            acc = acc + values[key]
        return acc / n

    n = 16
    prev = estimate(n)
    while True:
        n *= 2
        cur = estimate(n)
        gap = abs(cur.mid_float() - prev.mid_float())
        if gap <= tol:
            return cur.add_error(gap).clip_nonnegative()
        if n >= max_nodes:
            raise PrecisionExhausted(f"quadrature gap {gap:.3g} above tolerance {tol:g} at {n} nodes")
        prev = cur


# --------------------------------------------------------------------------- torsion curves


@dataclass(frozen=True)
class TorsionCurveData:
    a: int
    b: int
    zeta_order: int


def is_torsion_curve(C: Curve) -> Tuple[bool, Optional[TorsionCurveData]]:
    """Collinear support plus a cyclotomic polynomial in ``u = x^a y^b``."""
    if C.irreducibility_verdict == "unverified":
        raise DomainError("curve irreducibility is unverified")
    P = C.P.divide_monomial()
    pts = sorted(P.support)
    (x0, y0), (x1, y1) = pts[0], pts[1]
    g = math.gcd(x1 - x0, y1 - y0)
    a, b = (x1 - x0) // g, (y1 - y0) // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    steps = {}
    for (i, j), c in P.support.items():
        di, dj = i - x0, j - y0
        if di * b - dj * a != 0:
            return False, None
        steps[di // a if a else dj // b] = c
    lo = min(steps)
    q = IntPoly1([steps.get(k, 0) for k in range(lo, max(steps) + 1)])
    if not kronecker_test(q):
        return False, None
    _, q = q.strip_x()
    order = 1
    for f, _m in factor_univariate(q)[1]:
        m = cyclotomic_order(f)
        if m is None:
            raise InternalError("Kronecker-positive factor is not cyclotomic")
        order = order * m // math.gcd(order, m)
    return True, TorsionCurveData(a, b, order)


# --------------------------------------------------------------------------- power images


def _norm_power(coeffs, l, R):
    """Coefficients of ``A(X)`` with roots the ``l``-th powers of the roots of ``sum c_j v^j``.

    Works over any exact ring ``R``: power sums come from Newton's identities,
    scaled by powers of the leading coefficient so every division is exact.
    """
    d = len(coeffs) - 1
    ad = coeffs[d]
    if d == 0:
        return [ad**l]
    adp = [R.one]
    for _ in range(d * l + 1):
        adp.append(adp[-1] * ad)
    t = [None] * (d * l + 1)
    for k in range(1, d * l + 1):
        acc = R.zero
        for j in range(1, min(k - 1, d) + 1):
            acc += coeffs[d - j] * adp[j - 1] * t[k - j]
        if k <= d:
            acc += k * coeffs[d - k] * adp[k - 1]
        t[k] = -acc
    sums = [None] + [t[l * m] for m in range(1, d + 1)]
    E = [R.one]
    for m in range(1, d + 1):
        acc = R.zero
        for j in range(1, m + 1):
            term = E[m - j] * sums[j]
            acc = acc + term if j % 2 == 1 else acc - term
        E.append(acc.exquo(R(m)) if m > 1 else acc)
    adl = ad**l
    out = [None] * (d + 1)
    for m in range(d + 1):
        c = adl if m == 0 else E[m]
        if m >= 2:
            c = c.exquo(adl ** (m - 1))
        out[d - m] = c if m % 2 == 0 else -c
    return out


def power_image_poly(P: IntPoly2, l: int) -> IntPoly2:
    """Reduced equation of the image of ``P = 0`` under ``(x, y) -> (x^l, y^l)``."""
    if l < 1:
        raise DomainError("power must be positive")
    if l == 1:
        return _reduced(P)
    Ry, yy = ring("y", ZZ)
    dx = P.degree_in(0)
    cx = [Ry.zero] * (dx + 1)
    for (i, j), c in P.terms:
        cx[i] += c * yy**j
    A = _norm_power(cx, l, Ry)
    RX, XX = ring("X", ZZ)
    dy = max(a.degree() for a in A)
    cy = [RX.zero] * (dy + 1)
    for m, a in enumerate(A):
        for (j,), c in a.terms():
            cy[j] += c * XX**m
    B = _norm_power(cy, l, RX)
    RXY, X, Y = ring("X,Y", ZZ)
    N = RXY.zero
    for n, b in enumerate(B):
        for (m,), c in b.terms():
            N += c * X**m * Y**n
    S = N.sqf_part()
    return IntPoly2({(i, j): int(c) for (i, j), c in S.terms()}).primitive_part()


def _reduced(P: IntPoly2) -> IntPoly2:
    R, X, Y = ring("X,Y", ZZ)
    N = R.zero
    for (i, j), c in P.terms:
        N += c * X**i * Y**j
    S = N.sqf_part()
    return IntPoly2({(i, j): int(c) for (i, j), c in S.terms()}).primitive_part()


def power_image(C: Curve, l: int) -> Curve:
    return Curve(power_image_poly(C.P, l))


def ecc_cardinality_ok(count: int, degree: int) -> bool:
    """``count <= (2 / log 2) log(degree)``, i.e. ``2^count <= degree^2``."""
    return 2**count <= degree * degree


def ecc_primes(C: Curve, bound: int) -> Set[int]:
    """Primes ``p <= bound`` whose reduced image ``[p]C`` has smaller degree than ``C``."""
    if bound < 2:
        raise DomainError("bound must be at least 2")
    out = set()
    for p in primes_upto(bound):
        if power_image_poly(C.P, p).total_degree < C.degree:
            out.add(p)
    if not ecc_cardinality_ok(len(out), C.degree):
        raise InternalError(f"{len(out)} exceptional primes exceed the cardinality bound for degree {C.degree}")
    return out


def reflect_x(C: Curve) -> Curve:
    """Equation of the image under ``x -> 1/x``."""
    d = C.P.degree_in(0)
    return Curve(IntPoly2({(d - i, j): c for (i, j), c in C.P.terms}))


def swap_xy(C: Curve) -> Curve:
    return Curve(C.P.swap())
