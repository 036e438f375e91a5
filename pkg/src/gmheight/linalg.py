"""Exact linear algebra over Z and Q.

Matrices are lists of rows of Python ints or Fractions.  Nothing here uses
floating point except the pruning radii inside :func:`enumerate_short`, whose
candidates are re-checked exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    """Scale each rational row by its common denominator."""
    out = []
    for r in rows:
        den = 1
        for c in r:
            d = Fraction(c).denominator
            den = den * d // math.gcd(den, d)
        out.append([int(Fraction(c) * den) for c in r])
    return out


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            f = a[i][col]
            row_i = a[i]
            row_r = a[rank]
            for j in range(col, n):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rank_q(rows: Sequence[Sequence[Fraction]]) -> int:
    return bareiss_rank(integer_rows(rows))


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [[Fraction(c) for c in r] for r in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [c * inv for c in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def nullspace_q(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right kernel; one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def solve_q(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of ``A v = rhs`` or None."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    v = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        v[pc] = red[r][n]
    return v


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_echelon_z(rows: Matrix, ncols: Optional[int] = None) -> Tuple[Matrix, int]:
    """Unimodular row reduction of the first ``ncols`` columns.

    Returns the transformed rows (full width) and the number of pivot rows.
    Rows below the pivots have zeros in the first ``ncols`` columns.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if ncols is None else ncols
    r = 0
    for col in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][col] == 0:
                continue
            if a[r][col] == 0:
                a[r], a[i] = a[i], a[r]
                continue
            g, s, t = _xgcd(a[r][col], a[i][col])
            u, v = a[r][col] // g, a[i][col] // g
            ra, rb = a[r], a[i]
            a[r] = [s * x + t * y for x, y in zip(ra, rb)]
            a[i] = [-v * x + u * y for x, y in zip(ra, rb)]
        if a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][col]
            for i in range(r):
                q = a[i][col] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return a, r


def hnf(rows: Matrix) -> Matrix:
    """Row-style Hermite normal form (nonzero rows only)."""
    ech, r = row_echelon_z(rows)
    return ech[:r]


def lattice_index(rows: Matrix) -> int:
    """Index of the row lattice in Z^n (full rank required): product of HNF pivots."""
    h = hnf(rows)
    n = len(rows[0])
    if len(h) != n:
        raise ValueError("lattice does not have full rank")
    out = 1
    for i, row in enumerate(h):
        out *= row[i]
    return abs(out)


def integer_kernel(rows: Matrix, ncols: int) -> Matrix:
    """Z-basis of ``{v in Z^ncols : A v = 0}`` for an integer matrix ``A``.

    Row-reduces ``[A^T | I]`` unimodularly; the identity parts of the rows
    whose ``A^T`` part vanishes span the kernel over Z.
    """
    m = len(rows)
    aug = []
    for j in range(ncols):
        aug.append([rows[i][j] for i in range(m)] + [int(k == j) for k in range(ncols)])
    if m == 0:
        return [r[m:] for r in aug]
    ech, r = row_echelon_z(aug, m)
    return [row[m:] for row in ech[r:]]


# --------------------------------------------------------------------------- LLL


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: Matrix, delta: Fraction = Fraction(99, 100)) -> Matrix:
    """Integral LLL (exact Gram-Schmidt with integer ``d_i`` and ``lambda_ij``).

    The input vectors must be linearly independent.
    """
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    dn, dd = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = _dot(b[0], b[0])
    k = 1
    kmax = 0

    def red(k, l):
        dl = d[l + 1]
        if 2 * abs(lam[k][l]) > dl:
            q = (2 * lam[k][l] + dl) // (2 * dl)
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * dl
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("LLL input vectors are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        lm = lam[k][k - 1]
        if dd * d[k + 1] * d[k - 1] < dn * d[k] * d[k] - dd * lm * lm:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b


def enumerate_short(basis: Matrix, radius2: int, max_nodes: int = 200000):
    """Yield nonzero lattice vectors with squared norm ``<= radius2``.

    Schnorr-Euchner style depth-first enumeration on a (preferably reduced) basis.
    Stops silently after ``max_nodes`` tree nodes.
    """
    n = len(basis)
    if n == 0:
        return
    bstar = []
    mu = [[0.0] * n for _ in range(n)]
    bn = []
    for i in range(n):
        v = [float(x) for x in basis[i]]
        for j in range(i):
            mu[i][j] = _dot(basis[i], bstar[j]) / bn[j] if bn[j] else 0.0
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        bn.append(_dot(v, v))
    R = float(radius2) * (1 + 1e-9) + 1e-9
    coeff = [0] * n
    nodes = 0

    def rec(level, partial):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            return
        c = -sum(coeff[j] * mu[j][level] for j in range(level + 1, n))
        if bn[level] <= 0:
            return
        span = math.sqrt(max(0.0, (R - partial) / bn[level]))
        lo, hi = math.ceil(c - span), math.floor(c + span)
        for x in range(lo, hi + 1):
            coeff[level] = x
            p = partial + (x - c) ** 2 * bn[level]
            if p > R:
                continue
            if level == 0:
                if any(coeff):
                    yield list(coeff)
            else:
                yield from rec(level - 1, p)
            if nodes > max_nodes:
                break
        coeff[level] = 0

    for cs in rec(n - 1, 0.0):
        v = [0] * len(basis[0])
        for c, row in zip(cs, basis):
            if c:
                v = [a + c * b for a, b in zip(v, row)]
        if _dot(v, v) <= radius2:
            yield v
