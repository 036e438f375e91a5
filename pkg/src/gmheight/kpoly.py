"""Bivariate polynomials with coefficients in a number field (in practice ``Q(zeta_m)``)."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Mapping, Tuple

from .errors import DomainError
from .fields import FieldElement, NumberField
from .polys import IntPoly2, grlex_key, parse_poly


class KPoly2:
    """Sparse map ``(i, j) -> FieldElement``; zero coefficients are dropped."""

    def __init__(self, field: NumberField, terms: Mapping[Tuple[int, int], FieldElement]):
        self.field = field
        clean = {}
        for mono, c in terms.items():
            c = field(c)
            if not c.is_zero():
                clean[tuple(mono)] = c
        self.terms: Dict[Tuple[int, int], FieldElement] = dict(sorted(clean.items(), key=lambda kv: grlex_key(kv[0])))

    @classmethod
    def from_int(cls, field: NumberField, F: IntPoly2) -> "KPoly2":
        return cls(field, {m: field(c) for m, c in F.support.items()})

    @classmethod
    def parse(cls, text: str, field: NumberField) -> "KPoly2":
        """Grammar over ``x, y`` with ``t`` standing for the field generator."""
        raw = parse_poly(text, ("x", "y", "t"))
        terms: Dict[Tuple[int, int], list] = {}
        for (i, j, k), c in raw.items():
            cs = terms.setdefault((i, j), [])
            cs.extend([Fraction(0)] * (k + 1 - len(cs)))
            cs[k] += c
        return cls(field, {m: field.reduce(cs) for m, cs in terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def to_int(self) -> IntPoly2:
        """Integer polynomial proportional to this one (requires rational coefficients)."""
        if not self.is_rational():
            raise DomainError("coefficients are not rational")
        den = 1
        for c in self.terms.values():
            q = c.rational()
            den = den * q.denominator // _gcd(den, q.denominator)
        return IntPoly2({m: int(c.rational() * den) for m, c in self.terms.items()}).primitive_part()

    def __mul__(self, other: "KPoly2") -> "KPoly2":
        out: Dict[Tuple[int, int], FieldElement] = {}
        for (a, b), c in self.terms.items():
            for (d, e), f in other.terms.items():
                key = (a + d, b + e)
                out[key] = out[key] + c * f if key in out else c * f
        return KPoly2(self.field, out)

    def map_coefficients(self, fn) -> "KPoly2":
        return KPoly2(self.field, {m: fn(c) for m, c in self.terms.items()})

    def divided_derivative(self, la: int, lb: int) -> "KPoly2":
        out = {}
        for (i, j), c in self.terms.items():
            if i >= la and j >= lb:
                out[(i - la, j - lb)] = c * (comb(i, la) * comb(j, lb))
        return KPoly2(self.field, out)

    def evaluate(self, embed_coeff, x, y):
        """Evaluate with coefficients sent through ``embed_coeff`` into the field of ``x, y``."""
        acc = 0 * x
        xp = {0: 1 + 0 * x}
        yp = {0: 1 + 0 * y}

        def pw(cache, base, e):
            if e not in cache:
                k = max(cache)
                v = cache[k]
                while k < e:
                    v = v * base
                    k += 1
                    cache[k] = v
            return cache[e]

        for (i, j), c in self.terms.items():
            acc = acc + embed_coeff(c) * pw(xp, x, i) * pw(yp, y, j)
        return acc

    def __eq__(self, other):
        return isinstance(other, KPoly2) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(self.terms.items())))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.terms.items():
            mono = "*".join(s for s in (_pw("x", i), _pw("y", j)) if s)
            coeff = c.to_text("t")
            if mono:
                parts.append(f"({coeff})*{mono}" if coeff != "1" else mono)
            else:
                parts.append(f"({coeff})")
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"KPoly2({self.to_text()!r} over {self.field.to_text()!r})"


def _pw(v: str, e: int) -> str:
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
