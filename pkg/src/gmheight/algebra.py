"""Univariate factorization, cyclotomic polynomials and small arithmetic helpers."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import List, Tuple

import sympy

from .errors import DomainError
from .polys import IntPoly1

_X = sympy.Symbol("x")


def _poly_key(p: IntPoly1):
    return (p.degree, p.coeffs)


def factor_univariate(P: IntPoly1) -> Tuple[int, List[Tuple[IntPoly1, int]]]:
    """Factor ``P`` over the integers.

    Returns ``(content, [(factor, multiplicity), ...])`` where every factor is
    primitive, irreducible over Q and has a positive leading coefficient.  The
    content carries the sign.  Factors are sorted by degree, then coefficients.
    """
    if P.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    if P.degree == 0:
        return P.lc, []
    c, facs = P.to_sympy(_X).factor_list()
    out = []
    sign = 1
    for f, e in facs:
        q = IntPoly1.from_sympy(f)
        if q.lc < 0:
            q = -q
            sign *= (-1) ** e
        out.append((q, int(e)))
    out.sort(key=lambda fe: _poly_key(fe[0]))
    return int(c) * sign, out


def is_irreducible(P: IntPoly1) -> bool:
    """Irreducible over Q (content is ignored)."""
    if P.degree < 1:
        return False
    _, facs = factor_univariate(P)
    return len(facs) == 1 and facs[0][1] == 1


def squarefree_part(P: IntPoly1) -> IntPoly1:
    """Primitive square-free part with positive leading coefficient."""
    if P.degree <= 0:
        return IntPoly1([1])
    g = P.to_sympy(_X).sqf_part()
    return IntPoly1.from_sympy(g).primitive_part()


def gcd1(a: IntPoly1, b: IntPoly1) -> IntPoly1:
    g = a.to_sympy(_X).gcd(b.to_sympy(_X))
    return IntPoly1.from_sympy(g).primitive_part()


def divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorint(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("phi needs a positive integer")
    r = n
    for p in factorint(n):
        r = r // p * (p - 1)
    return r


def moebius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorint(n) == {n: 1}


def primes_upto(n: int) -> List[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=512)
def cyclotomic_polynomial(m: int) -> IntPoly1:
    """Phi_m by exact division of ``x^m - 1`` by the Phi_d, d a proper divisor."""
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"cyclotomic_polynomial needs m >= 1, got {m!r}")
    num = IntPoly1.monomial(m) - IntPoly1([1])
    for d in divisors(m)[:-1]:
        num = num.divmod_exact(cyclotomic_polynomial(d))
    return num


def cyclotomic_order(P: IntPoly1):
    """The m with P == Phi_m (up to sign), or None."""
    P = P.primitive_part()
    n = P.degree
    if n < 1:
        return None
    # phi(m) = n forces m <= 2 n^2 + 2 (crude but safe since phi(m) >= sqrt(m/2))
    for m in range(1, 2 * n * n + 3):
        if euler_phi(m) == n and cyclotomic_polynomial(m) == P:
            return m
    return None
