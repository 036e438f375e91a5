"""Weil heights of algebraic numbers and of points of the two-dimensional torus."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from typing import Optional, Union

import sympy

from .algebra import factor_univariate
from .analytic import kronecker_test, log_mahler_1d
from .balls import RealBall, default_precision
from .errors import DomainError
from .fields import FieldElement, NumberField, minimal_polynomial
from .linalg import lattice_index, rank_q
from .polys import IntPoly1


class Point2:
    """A point ``(x, y)`` with nonzero coordinates in a common number field."""

    def __init__(self, field: NumberField, x, y):
        self.field = field
        self.x = field(x)
        self.y = field(y)
        if self.x.is_zero() or self.y.is_zero():
            raise DomainError("a point of the torus needs nonzero coordinates")

    @classmethod
    def rational(cls, x, y) -> "Point2":
        return cls(NumberField.rationals(), Fraction(x), Fraction(y))

    @classmethod
    def from_dict(cls, data: dict) -> "Point2":
        field = NumberField(data.get("field", "t-1"), data.get("conductor"))
        return cls(field, field.parse(str(data["x"])), field.parse(str(data["y"])))

    @classmethod
    def from_json(cls, text: str) -> "Point2":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"field": self.field.to_text(), "x": self.x.to_text(), "y": self.y.to_text()}

    @cached_property
    def minpoly_x(self) -> IntPoly1:
        return minimal_polynomial(self.x)

    @cached_property
    def minpoly_y(self) -> IntPoly1:
        return minimal_polynomial(self.y)

    @cached_property
    def generated_degree(self) -> int:
        """``[Q(x, y) : Q]``: rank of the monomials ``x^i y^j`` over Q."""
        dx, dy = self.minpoly_x.degree, self.minpoly_y.degree
        xp = [self.field.one()]
        for _ in range(dx - 1):
            xp.append(xp[-1] * self.x)
        rows = []
        yp = self.field.one()
        for _ in range(dy):
            rows.extend(list((a * yp).coords) for a in xp)
            yp = yp * self.y
        return rank_q(rows)

    def swap(self) -> "Point2":
        return Point2(self.field, self.y, self.x)

    def __eq__(self, other):
        return isinstance(other, Point2) and self.field == other.field and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.field, self.x, self.y))

    def __repr__(self):
        return f"Point2(x={self.x.to_text()!r}, y={self.y.to_text()!r}, field={self.field.to_text()!r})"


def height_algebraic(
    minpoly: Union[IntPoly1, str], prec: Optional[int] = None, max_prec: Optional[int] = None
) -> RealBall:
    """``h = log M(P) / deg P`` for the minimal polynomial ``P`` of an algebraic number."""
    P = IntPoly1.parse(minpoly) if isinstance(minpoly, str) else minpoly
    if P.degree < 1:
        raise DomainError("minimal polynomial must have positive degree")
    if P.coeffs[0] == 0:
        raise DomainError("zero is not a point of the multiplicative group")
    content, facs = factor_univariate(P)
    if abs(content) != 1:
        raise DomainError(f"{P} is not primitive")
    if len(facs) != 1 or facs[0][1] != 1:
        raise DomainError(f"{P} is reducible over Q")
    prec = prec or default_precision()
    cap = {} if max_prec is None else {"max_prec": max_prec}
    return (log_mahler_1d(P, prec=prec, **cap) / P.degree).clip_nonnegative()


def _rational_content(coeffs) -> Fraction:
    num = 0
    den = 1
    for c in coeffs:
        c = Fraction(c)
        if c:
            num = sympy.igcd(num, c.numerator)
            den = sympy.ilcm(den, c.denominator)
    return Fraction(int(num), int(den))


def finite_contribution(p: Point2) -> Fraction:
    """Positive rational ``c`` with ``sum over finite places = -log(c) / D``.

    ``c`` is the content of the norm of ``1 + x z + y z^2``; Gauss's lemma turns the
    product of local Gauss norms into this single rational.
    """
    if p.x.is_rational() and p.y.is_rational():
        return _rational_content([1, p.x.rational(), p.y.rational()]) ** p.field.degree
    t, z = sympy.symbols("t z")
    g = sympy.Poly(p.field.g.to_sympy(t).as_expr(), t, z, domain="QQ")

    def expr(e: FieldElement):
        return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(e.coords))

    f = sympy.Poly(1 + expr(p.x) * z + expr(p.y) * z**2, t, z, domain="QQ")
    norm = sympy.Poly(sympy.resultant(g, f, t), z, domain="QQ")
    return _rational_content([Fraction(int(c.p), int(c.q)) for c in norm.all_coeffs()])


def archimedean_sum(p: Point2, prec: int) -> RealBall:
    """``sum over embeddings of log max(1, |x|, |y|)``."""
    xs = p.x.conjugates(prec)
    ys = p.y.conjugates(prec)
    acc = RealBall.zero(prec)
    for a, b in zip(xs, ys):
        acc = acc + a.abs().max(b.abs()).log_plus()
    return acc


def point_height(p: Point2, prec: Optional[int] = None) -> RealBall:
    """Absolute logarithmic Weil height of ``(1 : x : y)``."""
    prec = prec or default_precision()
    work = prec + 16
    D = p.field.degree
    c = finite_contribution(p)
    total = archimedean_sum(p, work) - RealBall.exact(c, work + 8).log()
    return (total / D).clip_nonnegative().with_prec(prec)


def finite_part_equation_order(p: Point2, prec: Optional[int] = None) -> RealBall:
    """Finite-place part computed in the equation order ``Z[theta]``.

    Returns ``log d - log N(a) / D`` where ``d`` clears the coordinate denominators
    and ``N(a)`` is the index of the module generated by ``d, d x, d y``.  Agrees
    with the exact value whenever ``Z[theta]`` is the maximal order.
    """
    prec = prec or default_precision()
    F = p.field
    D = F.degree
    d = 1
    for e in (p.x, p.y):
        den = e.denominator()
        d = d * den // sympy.igcd(d, den)
    gens = [F(d), p.x * d, p.y * d]
    rows = []
    for gen in gens:
        for b in F.basis():
            rows.append([int(c) for c in (gen * b).coords])
    index = lattice_index(rows)
    return RealBall.exact(d, prec).log() - RealBall.exact(index, prec).log() / D


def is_torsion_point(p: Point2) -> bool:
    return kronecker_test(p.minpoly_x) and kronecker_test(p.minpoly_y)


def power_point(p: Point2, l: int) -> Point2:
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"power must be a positive integer, got {l!r}")
    return Point2(p.field, p.x**l, p.y**l)
