"""Number fields ``Q(theta)`` given by a monic integer generator, and their elements."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from .algebra import cyclotomic_polynomial, factor_univariate, is_irreducible, squarefree_part
from .errors import DomainError
from .linalg import solve_q
from .polys import IntPoly1, parse_poly

_T = sympy.Symbol("t")
_Z = sympy.Symbol("z")


class NumberField:
    """``Q[t]/(g)`` for a monic irreducible ``g``."""

    def __init__(self, generator, cyclotomic_conductor: Optional[int] = None, check: bool = True):
        g = IntPoly1.parse(generator, "t") if isinstance(generator, str) else generator
        if g.degree < 1 or g.lc != 1:
            raise DomainError(f"field generator must be monic of degree >= 1, got {g.to_text('t')}")
        if check and not is_irreducible(g):
            raise DomainError(f"field generator {g.to_text('t')} is reducible")
        if cyclotomic_conductor is not None and cyclotomic_polynomial(cyclotomic_conductor) != g:
            raise DomainError(f"{g.to_text('t')} is not the cyclotomic polynomial of conductor {cyclotomic_conductor}")
        self.g = g
        self.degree = g.degree
        self.conductor = cyclotomic_conductor
        self._reduction = self._power_table()
        self._roots = {}

    @classmethod
    def rationals(cls) -> "NumberField":
        return _rationals()

    @classmethod
    def cyclotomic(cls, m: int) -> "NumberField":
        return _cyclotomic(m)

    def _power_table(self) -> List[Tuple[int, ...]]:
        """Coordinates of theta^k for k < 2D - 1."""
        D = self.degree
        low = [-c for c in self.g.coeffs[:D]]
        table = []
        for k in range(2 * D - 1):
            if k < D:
                table.append(tuple(int(i == k) for i in range(D)))
            else:
                prev = table[-1]
                top = prev[D - 1]
                row = [0] + list(prev[: D - 1])
                table.append(tuple(r + top * c for r, c in zip(row, low)))
        return table

    # ----------------------------------------------------------------- elements
    def element(self, coords: Iterable) -> "FieldElement":
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.degree:
            return self.reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def reduce(self, coeffs: Sequence[Fraction]) -> "FieldElement":
        """Element represented by an arbitrary polynomial in theta."""
        D = self.degree
        cs = [Fraction(c) for c in coeffs]
        # fold high powers down, one degree at a time
        low = [-c for c in self.g.coeffs[:D]]
        for k in range(len(cs) - 1, D - 1, -1):
            top = cs[k]
            if top:
                for i in range(D):
                    cs[k - D + i] += top * low[i]
            cs.pop()
        cs += [Fraction(0)] * (D - len(cs))
        return FieldElement(self, tuple(cs))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            raise DomainError("element belongs to a different field")
        if isinstance(value, str):
            return self.parse(value)
        return self.element([value])

    def parse(self, text: str) -> "FieldElement":
        raw = parse_poly(text, ("t",))
        deg = max((k[0] for k in raw), default=0)
        cs = [Fraction(0)] * (deg + 1)
        for (k,), c in raw.items():
            cs[k] = c
        return self.reduce(cs)

    def gen(self) -> "FieldElement":
        return self.reduce([0, 1])

    def one(self) -> "FieldElement":
        return self.element([1])

    def zero(self) -> "FieldElement":
        return self.element([])

    def basis(self) -> List["FieldElement"]:
        return [self.element([int(i == j) for i in range(self.degree)]) for j in range(self.degree)]

    # ----------------------------------------------------------------- embeddings
    def generator_roots(self, prec: int):
        """Certified enclosures of the D complex roots of ``g``."""
        from .analytic import isolate_roots

        key = prec
        if key not in self._roots:
            self._roots[key] = isolate_roots(self.g, target_radius=None, prec=prec)
        return self._roots[key]

    def to_text(self) -> str:
        return self.g.to_text("t")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        extra = f", conductor={self.conductor}" if self.conductor else ""
        return f"NumberField({self.to_text()!r}{extra})"


@lru_cache(maxsize=None)
def _rationals() -> NumberField:
    return NumberField(IntPoly1([-1, 1]), check=False)


@lru_cache(maxsize=64)
def _cyclotomic(m: int) -> NumberField:
    if m < 1:
        raise DomainError("conductor must be positive")
    return NumberField(cyclotomic_polynomial(m), cyclotomic_conductor=m, check=False)


class FieldElement:
    """Element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Tuple[Fraction, ...]):
        if len(coords) != field.degree:
            raise DomainError("coordinate count must equal the field degree")
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        D = self.field.degree
        prod = [Fraction(0)] * (2 * D - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        table = self.field._reduction
        out = [Fraction(0)] * D
        for k, c in enumerate(prod):
            if c:
                row = table[k]
                for i in range(D):
                    if row[i]:
                        out[i] += c * row[i]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        D = self.field.degree
        cols = [(self * b).coords for b in self.field.basis()]
        mat = [[cols[j][i] for j in range(D)] for i in range(D)]
        sol = solve_q(mat, [Fraction(int(i == 0)) for i in range(D)])
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return isinstance(other, FieldElement) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def denominator(self) -> int:
        d = 1
        for c in self.coords:
            d = d * c.denominator // _gcd(d, c.denominator)
        return d

    def as_poly_coeffs(self) -> Tuple[Fraction, ...]:
        return self.coords

    def conjugates(self, prec: int):
        """Enclosures of the images under the D embeddings, in root order."""
        from .balls import ComplexBall

        out = []
        for r in self.field.generator_roots(prec):
            acc = ComplexBall.exact(0, prec)
            for c in reversed(self.coords):
                acc = acc * r + ComplexBall.exact(c, prec)
            out.append(acc)
        return out

    def to_text(self, var: str = "t") -> str:
        from .polys import _format_terms

        terms = [((i,), c) for i, c in enumerate(self.coords) if c]
        if not terms:
            return "0"
        return _format_terms(list(reversed(terms)), (var,))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FieldElement({self.to_text()!r} in {self.field.to_text()!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _to_sympy_q(coords: Sequence[Fraction], gen):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coords)] or [0], gen, domain="QQ")


def minimal_polynomial(e: FieldElement) -> IntPoly1:
    """Primitive irreducible integer polynomial with positive leading coefficient vanishing at ``e``.

    Eliminates ``t`` from ``g(t)`` and ``den*z - num(t)``; the result is a power of
    the minimal polynomial, so the square-free part is the answer.
    """
    if e.is_rational():
        q = e.coords[0]
        return IntPoly1([-q.numerator, q.denominator])
    den = e.denominator()
    num = [int(c * den) for c in e.coords]
    g = e.field.g.to_sympy(_T)
    h = sympy.Poly(den * _Z - sum(c * _T**i for i, c in enumerate(num)), _T, _Z, domain="ZZ")
    res = sympy.resultant(sympy.Poly(g.as_expr(), _T, _Z, domain="ZZ"), h, _T)
    res = sympy.Poly(res, _Z, domain="ZZ")
    P = IntPoly1.from_sympy(res)
    sq = squarefree_part(P)
    _, facs = factor_univariate(sq)
    if len(facs) != 1:
        # should not happen for an element of a field; pick the factor that vanishes at e
        for f, _m in facs:
            if f(e).is_zero():
                return f
        raise AssertionError("no factor of the eliminant vanishes at the element")
    return facs[0][0]


def element_degree(e: FieldElement) -> int:
    return minimal_polynomial(e).degree


# --------------------------------------------------------------------------- polynomials over K


def _poly_trim(p: List[FieldElement]) -> List[FieldElement]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def poly_rem(a: List[FieldElement], b: List[FieldElement]) -> List[FieldElement]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv = b[-1].inverse()
    while len(a) >= len(b):
        q = a[-1] * inv
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        a.pop()
        a = _poly_trim(a)
    return a


def poly_gcd(a: List[FieldElement], b: List[FieldElement]) -> List[FieldElement]:
    """Monic gcd of two univariate polynomials over a number field."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        a, b = b, poly_rem(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def poly_eval(coeffs: Sequence, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class Embedding:
    """A field embedding ``K -> L`` determined by the image of the generator."""

    def __init__(self, source: NumberField, target: NumberField, image: FieldElement):
        self.source = source
        self.target = target
        self.image = image
        self._powers = [target.one()]
        for _ in range(source.degree - 1):
            self._powers.append(self._powers[-1] * image)

    def __call__(self, e: FieldElement) -> FieldElement:
        if e.field != self.source:
            raise DomainError("element is not in the embedding's source field")
        acc = self.target.zero()
        for c, p in zip(e.coords, self._powers):
            if c:
                acc = acc + p * c
        return acc


def compositum(K1: NumberField, K2: NumberField) -> Tuple[NumberField, Embedding, Embedding]:
    """A field containing copies of ``K1`` and ``K2``, with both embeddings.

    The generator is ``theta1 + c*theta2`` for the first small ``c`` making the
    root of ``g2`` recoverable by a linear gcd; when the eliminant is reducible
    the first irreducible factor is used, so the result is one compositum among
    possibly several.
    """
    if K1.degree == 1:
        return K2, Embedding(K1, K2, K2(-K1.g.coeffs[0])), Embedding(K2, K2, K2.gen())
    if K2.degree == 1:
        return K1, Embedding(K1, K1, K1.gen()), Embedding(K2, K1, K1(-K2.g.coeffs[0]))
    if K1 == K2:
        return K1, Embedding(K1, K1, K1.gen()), Embedding(K2, K2, K2.gen())
    s, x = sympy.symbols("s x")
    g1 = K1.g.to_sympy(s).as_expr()
    g2 = K2.g.to_sympy(s).as_expr()
    for c in (1, -1, 2, -2, 3, -3, 5, 7):
        h = sympy.Poly(sympy.resultant(g2, g1.subs(s, x - c * s), s), x, domain="ZZ")
        sq = h.sqf_part()
        if sq.degree() != h.degree():
            continue
        _, facs = factor_univariate(IntPoly1.from_sympy(h))
        f = facs[0][0]
        if f.lc != 1:
            continue
        L = NumberField(f, check=False)
        gamma = L.gen()
        # theta2 is the common root of g2(s) and g1(gamma - c s)
        a = [L(int(v)) for v in K2.g.coeffs]
        b_expr = sympy.Poly(g1.subs(s, sympy.Symbol("gam") - c * s), s)
        b = []
        for coeff in reversed(b_expr.all_coeffs()):
            pe = sympy.Poly(coeff, sympy.Symbol("gam"))
            b.append(poly_eval([L(int(v)) for v in reversed(pe.all_coeffs())], gamma))
        d = poly_gcd(a, b)
        if len(d) != 2:
            continue
        theta2 = -d[0]
        theta1 = gamma - theta2 * c
        if not K1.g(theta1).is_zero() or not K2.g(theta2).is_zero():
            continue
        return L, Embedding(K1, L, theta1), Embedding(K2, L, theta2)
    raise DomainError("could not find a primitive element for the compositum")
