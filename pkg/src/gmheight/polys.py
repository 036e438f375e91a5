"""Exact integer polynomials in one and two variables, plus the shared text grammar.

Grammar: variables ``x``, ``y``, ``t``; integer or rational literals; ``+ - * / ^``
and parentheses.  ``/`` only divides by a nonzero constant.  Floating literals are
rejected.  ``**`` is accepted as a synonym for ``^`` and the Unicode minus sign as ``-``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DomainError, ParseError

Monomial = Tuple[int, ...]
RawPoly = Dict[Monomial, Fraction]

DEFAULT_VARIABLES = ("x", "y", "t")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<float>\d+\.\d*|\.\d+|\d+[eE][+-]?\d+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()−]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].strip()[:1] or text[pos:pos + 1]
            raise ParseError(f"unexpected character {bad!r} at position {pos}", bad, pos)
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("float"):
            raise ParseError(f"floating literal {m.group('float')!r} not allowed", m.group("float"), start)
        if m.group("num"):
            tokens.append(("num", m.group("num"), start))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), start))
        else:
            op = m.group("op")
            op = {"**": "^", "−": "-"}.get(op, op)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _padd(a: RawPoly, b: RawPoly, sign: int = 1) -> RawPoly:
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + sign * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def _pmul(a: RawPoly, b: RawPoly) -> RawPoly:
    out: RawPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(i + j for i, j in zip(ka, kb))
            c = out.get(k, 0) + va * vb
            if c:
                out[k] = c
            else:
                out.pop(k, None)
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0
        self.zero_mono = (0,) * len(self.vars)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok, why):
        shown = tok[1] if tok[0] != "end" else "<end of input>"
        raise ParseError(f"{why}: {shown!r} at position {tok[2]} in {self.text!r}", shown, tok[2])

    def parse(self) -> RawPoly:
        if self.peek()[0] == "end":
            self.fail(self.peek(), "empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(self.peek(), "unexpected token")
        return p

    def expr(self) -> RawPoly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            p = _padd(p, self.term(), sign)
        return p

    def term(self) -> RawPoly:
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()
            rhs_tok = self.peek()
            q = self.unary()
            if op[1] == "*":
                p = _pmul(p, q)
            else:
                if any(k != self.zero_mono for k in q) or not q:
                    self.fail(rhs_tok, "division only by a nonzero constant")
                c = q[self.zero_mono]
                p = {k: v / c for k, v in p.items()}
        return p

    def unary(self) -> RawPoly:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return {k: -v for k, v in self.unary().items()}
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RawPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail(tok, "exponent must be a nonnegative integer literal")
            e = int(tok[1])
            out: RawPoly = {self.zero_mono: Fraction(1)}
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> RawPoly:
        tok = self.take()
        if tok[0] == "num":
            v = Fraction(int(tok[1]))
            return {self.zero_mono: v} if v else {}
        if tok[0] == "name":
            if tok[1] not in self.vars:
                self.fail(tok, f"unknown variable (expected one of {', '.join(self.vars)})")
            mono = [0] * len(self.vars)
            mono[self.vars.index(tok[1])] = 1
            return {tuple(mono): Fraction(1)}
        if tok[:2] == ("op", "("):
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail(close, "expected ')'")
            return p
        self.fail(tok, "unexpected token")


def parse_poly(text: str, variables: Sequence[str] = DEFAULT_VARIABLES) -> RawPoly:
    """Parse ``text`` into ``{exponent tuple: Fraction}`` over ``variables``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", str(text))
    return _Parser(text, variables).parse()


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else 0


def clear_denominators(coeffs: Iterable[Fraction]) -> int:
    return reduce(_lcm, (Fraction(c).denominator for c in coeffs), 1)


# --------------------------------------------------------------------------- univariate


@dataclass(frozen=True)
class IntPoly1:
    """Integer polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly1":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly1":
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "IntPoly1":
        raw = parse_poly(text, (var,))
        if any(c.denominator != 1 for c in raw.values()):
            raise DomainError(f"non-integer coefficient in {text!r}")
        deg = max((k[0] for k in raw), default=-1)
        cs = [0] * (deg + 1)
        for (k,), c in raw.items():
            cs[k] = int(c)
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntPoly1":
        c = self.content()
        if c == 0:
            return self
        if self.lc < 0:
            c = -c
        return IntPoly1(a // c for a in self.coeffs)

    def __add__(self, other):
        other = _as_poly1(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly1(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly1(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly1(other))

    def __rsub__(self, other):
        return _as_poly1(other) - self

    def __mul__(self, other):
        other = _as_poly1(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly1()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly1(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly1([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly1":
        return IntPoly1(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod_exact(self, other: "IntPoly1") -> "IntPoly1":
        """Quotient of an exact division in Z[x]; raises if not exact."""
        q, r = _divmod_q(self.coeffs, other.coeffs)
        if any(r) or any(c.denominator != 1 for c in q):
            raise DomainError(f"{other} does not divide {self} exactly")
        return IntPoly1(int(c) for c in q)

    def divides(self, other: "IntPoly1") -> bool:
        q, r = _divmod_q(other.coeffs, self.coeffs)
        return not any(r) and all(c.denominator == 1 for c in q)

    def substitute_power(self, k: int) -> "IntPoly1":
        """Return P(x**k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly1(out)

    def reflect(self) -> "IntPoly1":
        """Return P(-x)."""
        return IntPoly1(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def strip_x(self) -> Tuple[int, "IntPoly1"]:
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k, IntPoly1(self.coeffs[k:])

    def to_sympy(self, gen=None):
        import sympy

        gen = gen if gen is not None else sympy.Symbol("x")
        return sympy.Poly(list(reversed(self.coeffs)) or [0], gen, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly) -> "IntPoly1":
        return cls(int(c) for c in reversed(poly.all_coeffs()))

    def to_text(self, var: str = "x") -> str:
        terms = [(i, c) for i, c in enumerate(self.coeffs) if c]
        return _format_terms([((i,), c) for i, c in reversed(terms)], (var,))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPoly1({self.to_text()!r})"


def _as_poly1(p) -> IntPoly1:
    if isinstance(p, IntPoly1):
        return p
    if isinstance(p, int):
        return IntPoly1([p])
    raise TypeError(f"cannot combine IntPoly1 with {type(p).__name__}")


def _divmod_q(a: Sequence, b: Sequence):
    """Rational long division on low-to-high coefficient lists."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = [Fraction(c) for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    lb = Fraction(b[-1])
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


# --------------------------------------------------------------------------- bivariate


def _format_coeff(c) -> str:
    return str(c)


def _format_terms(items, variables) -> str:
    if not items:
        return "0"
    out = []
    for mono, c in items:
        parts = []
        for v, e in zip(variables, mono):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        neg = c < 0
        a = -c if neg else c
        if not parts:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(parts)
        else:
            body = _format_coeff(a) + "*" + "*".join(parts)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def grlex_key(mono: Tuple[int, int]):
    """Sort key putting higher total degree first, then larger x exponent."""
    return (-(mono[0] + mono[1]), -mono[0])


@dataclass(frozen=True)
class IntPoly2:
    """Integer polynomial in ``x, y``; ``terms`` maps ``(i, j)`` to the coefficient of x^i y^j."""

    terms: Tuple[Tuple[Tuple[int, int], int], ...]

    def __init__(self, terms: Mapping[Tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Tuple[int, int], int] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise DomainError("negative exponent in IntPoly2")
            acc[(int(i), int(j))] = acc.get((int(i), int(j)), 0) + int(c)
        clean = tuple(sorted(((k, v) for k, v in acc.items() if v), key=lambda kv: grlex_key(kv[0])))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def parse(cls, text: str, allow_rational: bool = False) -> "IntPoly2":
        raw = parse_poly(text, ("x", "y"))
        if any(c.denominator != 1 for c in raw.values()):
            if not allow_rational:
                raise DomainError(f"non-integer coefficient in {text!r}")
            d = clear_denominators(raw.values())
            raw = {k: v * d for k, v in raw.items()}
        return cls({k: int(v) for k, v in raw.items()})

    @classmethod
    def from_poly1(cls, p: IntPoly1, var: int = 0) -> "IntPoly2":
        return cls({((i, 0) if var == 0 else (0, i)): c for i, c in enumerate(p.coeffs)})

    @property
    def support(self) -> Dict[Tuple[int, int], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m, _ in self.terms), default=-1)

    def content(self) -> int:
        return reduce(math.gcd, (c for _, c in self.terms), 0)

    def leading_coefficient(self) -> int:
        """Coefficient of the first monomial in graded-lex order."""
        return self.terms[0][1] if self.terms else 0

    def primitive_part(self) -> "IntPoly2":
        c = self.content()
        if c == 0:
            return self
        if self.leading_coefficient() < 0:
            c = -c
        return IntPoly2({k: v // c for k, v in self.terms})

    def monomial_gcd(self) -> Tuple[int, int]:
        if not self.terms:
            return (0, 0)
        return (min(i for (i, _), _ in self.terms), min(j for (_, j), _ in self.terms))

    def divide_monomial(self) -> "IntPoly2":
        a, b = self.monomial_gcd()
        return IntPoly2({(i - a, j - b): c for (i, j), c in self.terms})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def swap(self) -> "IntPoly2":
        return IntPoly2({(j, i): c for (i, j), c in self.terms})

    def __add__(self, other):
        other = _as_poly2(other)
        acc = dict(self.terms)
        for k, v in other.terms:
            acc[k] = acc.get(k, 0) + v
        return IntPoly2(acc)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly2({k: -v for k, v in self.terms})

    def __sub__(self, other):
        return self + (-_as_poly2(other))

    def __rsub__(self, other):
        return _as_poly2(other) - self

    def __mul__(self, other):
        other = _as_poly2(other)
        acc: Dict[Tuple[int, int], int] = {}
        for (i, j), a in self.terms:
            for (k, l), b in other.terms:
                key = (i + k, j + l)
                acc[key] = acc.get(key, 0) + a * b
        return IntPoly2(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly2({(0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, a, b):
        """Evaluate at ``(a, b)``; works for any ring elements supporting + and *."""
        pa: Dict[int, object] = {}
        pb: Dict[int, object] = {}

        def pw(cache, base, e):
            if e not in cache:
                r = 1
                for _ in range(e):
                    r = r * base
                cache[e] = r
            return cache[e]

        acc = 0
        for (i, j), c in self.terms:
            acc = acc + c * pw(pa, a, i) * pw(pb, b, j)
        return acc

    def divided_derivative(self, la: int, lb: int) -> "IntPoly2":
        """D_lambda = (1/lambda!) d^lambda, exact on integer polynomials."""
        return IntPoly2(
            {(i - la, j - lb): c * math.comb(i, la) * math.comb(j, lb) for (i, j), c in self.terms if i >= la and j >= lb}
        )

    def substitute_powers(self, l: int) -> "IntPoly2":
        """Return P(x**l, y**l)."""
        return IntPoly2({(i * l, j * l): c for (i, j), c in self.terms})

    def coefficients_in(self, var: int) -> list:
        """Coefficients as IntPoly1 in the *other* variable, indexed by the power of ``var``."""
        d = self.degree_in(var)
        buckets = [dict() for _ in range(d + 1)]
        for (i, j), c in self.terms:
            e, o = (i, j) if var == 0 else (j, i)
            buckets[e][o] = c
        out = []
        for b in buckets:
            deg = max(b, default=-1)
            out.append(IntPoly1([b.get(k, 0) for k in range(deg + 1)]))
        return out

    def to_text(self, variables: Sequence[str] = ("x", "y")) -> str:
        return _format_terms(self.terms, variables)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPoly2({self.to_text()!r})"


def _as_poly2(p) -> IntPoly2:
    if isinstance(p, IntPoly2):
        return p
    if isinstance(p, int):
        return IntPoly2({(0, 0): p})
    if isinstance(p, IntPoly1):
        return IntPoly2.from_poly1(p)
    raise TypeError(f"cannot combine IntPoly2 with {type(p).__name__}")
