"""Certified root enclosures, one-variable Mahler measures and the Kronecker test."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import numpy as np
from mpmath import libmp
from mpmath.ctx_mp import MPContext
from mpmath.libmp import fzero, mpf_add, mpf_cmp, mpf_sub, round_ceiling, round_floor

from .algebra import squarefree_part
from .balls import RAD_PREC, ComplexBall, RealBall, default_precision
from .errors import DomainError, IndeterminateDegree, PrecisionExhausted
from .polys import IntPoly1

DEFAULT_MAX_PREC = 16384
START_PREC = 64

Coeffs = Sequence[Union[int, Fraction, RealBall, ComplexBall]]


def _initial_guesses(mids: Sequence[complex], n: int) -> List[complex]:
    """Double-precision starting points from companion eigenvalues."""
    try:
        arr = np.array(list(reversed(mids)), dtype=complex)
        if not np.all(np.isfinite(arr)):
            raise OverflowError
        with np.errstate(all="ignore"):
            r = np.roots(arr)
        if len(r) == n and np.all(np.isfinite(r)):
            out = [complex(z) for z in r]
            # nudge exact duplicates apart so the Aberth denominators stay nonzero
            seen = set()
            for i, z in enumerate(out):
                while z in seen:
                    z = z * (1 + 1e-9) + 1e-9j
                seen.add(z)
                out[i] = z
            return out
    except (OverflowError, ValueError, np.linalg.LinAlgError):
        pass
    radius = 1.0 + max(abs(c) for c in mids[:-1]) / abs(mids[-1])
    return [radius * complex(math.cos(2 * math.pi * k / n + 0.4), math.sin(2 * math.pi * k / n + 0.4)) for k in range(n)]


def _aberth(ctx: MPContext, coeffs, z, tol_bits: int, max_iter: int):
    """In-place Aberth iteration on mpc approximations ``z``."""
    n = len(z)
    dcoeffs = [coeffs[i] * i for i in range(1, n + 1)]
    eps = ctx.ldexp(1, -tol_bits)
    for _ in range(max_iter):
        biggest = 0
        for i in range(n):
            zi = z[i]
            p = coeffs[n]
            for c in reversed(coeffs[:n]):
                p = p * zi + c
            dp = dcoeffs[n - 1]
            for c in reversed(dcoeffs[: n - 1]):
                dp = dp * zi + c
            if p == 0:
                continue
            if dp == 0:
                z[i] = zi + eps * (1 + 1j)
                biggest = 1
                continue
            ratio = p / dp
            s = 0
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d == 0:
                        d = eps
                    s += 1 / d
            den = 1 - ratio * s
            w = ratio / den if den != 0 else ratio
            z[i] = zi - w
            rel = abs(w) / max(1, abs(zi))
            if rel > biggest:
                biggest = rel
        if biggest < eps:
            return True
    return False


def _as_complex_balls(coeffs: Coeffs, prec: int) -> List[ComplexBall]:
    out = []
    for c in coeffs:
        if isinstance(c, ComplexBall):
            out.append(ComplexBall(c.re.with_prec(prec), c.im.with_prec(prec)))
        elif isinstance(c, RealBall):
            out.append(ComplexBall(c.with_prec(prec)))
        else:
            out.append(ComplexBall.exact(Fraction(c), prec))
    return out


class RootCluster:
    """A connected union of certified disks holding ``len(centers)`` roots."""

    __slots__ = ("centers", "radii")

    def __init__(self, centers, radii):
        self.centers = centers
        self.radii = radii

    @property
    def count(self) -> int:
        return len(self.centers)

    def modulus_bounds(self, prec: int):
        """(lower, upper) mpf bounds on ``|z|`` for every root in the cluster."""
        lo, hi = None, None
        for c, r in zip(self.centers, self.radii):
            m = ComplexBall(RealBall(c[0], fzero, prec), RealBall(c[1], fzero, prec)).abs()
            l = mpf_sub(m.lower(), r, prec + 8, round_floor)
            h = mpf_add(m.upper(), r, prec + 8, round_ceiling)
            lo = l if lo is None or mpf_cmp(l, lo) < 0 else lo
            hi = h if hi is None or mpf_cmp(h, hi) > 0 else hi
        if mpf_cmp(lo, fzero) < 0:
            lo = fzero
        return lo, hi


def _certify(coeffs: List[ComplexBall], z, prec: int):
    """Weierstrass/Gerschgorin inclusion disks and their connected components."""
    n = len(z)
    centers = [ComplexBall(RealBall(zi.real._mpf_, fzero, prec), RealBall(zi.imag._mpf_, fzero, prec)) for zi in z]
    lead = coeffs[n]
    radii = []
    for i in range(n):
        zi = centers[i]
        p = coeffs[n]
        for c in reversed(coeffs[:n]):
            p = p * zi + c
        den = lead
        for j in range(n):
            if j != i:
                den = den * (zi - centers[j])
        if den.contains_zero():
            return None
        w = (p / den).abs()
        # D(z_i - w_i, (n-1)|w_i|) lies inside D(z_i, n|w_i|)
        radii.append(libmp.mpf_mul(w.upper(), libmp.from_int(n), RAD_PREC, round_ceiling))
    # connected components of the disks (union-find on overlap)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            dist = (centers[i] - centers[j]).abs()
            reach = mpf_add(radii[i], radii[j], RAD_PREC, round_ceiling)
            if mpf_cmp(dist.lower(), reach) <= 0:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = []
    for idx in groups.values():
        clusters.append(
            RootCluster([(centers[i].re.mid, centers[i].im.mid) for i in idx], [radii[i] for i in idx])
        )
    return clusters


def _cluster_roots(
    coeffs: Coeffs,
    prec: int,
    max_prec: int,
    accept,
):
    """Run the precision ladder until ``accept(clusters, prec)`` holds."""
    deg = len(coeffs) - 1
    work = max(START_PREC, min(prec, max_prec))
    z = None
    while True:
        cb = _as_complex_balls(coeffs, work)
        if cb[deg].contains_zero():
            raise IndeterminateDegree("leading coefficient ball contains zero")
        ctx = MPContext()
        ctx.prec = work + 16
        mids = [ctx.mpc(ctx.make_mpf(c.re.mid), ctx.make_mpf(c.im.mid)) for c in cb]
        if z is None:
            z = [ctx.mpc(g) for g in _initial_guesses([complex(m) for m in mids], deg)]
        else:
            z = [ctx.mpc(v) for v in z]
        _aberth(ctx, mids, z, work, 60 + 8 * deg)
        ctx.prec = work
        z = [+v for v in z]
        clusters = _certify(cb, z, work)
        if clusters is not None:
            if accept(clusters, work):
                return clusters, work
        if work >= max_prec:
            raise PrecisionExhausted(f"root enclosures did not certify below {max_prec} bits")
        work = min(max_prec, work * 2)


def _sort_key(b: ComplexBall):
    return (b.re.mid_float(), b.im.mid_float(), libmp.to_str(b.re.mid, 30), libmp.to_str(b.im.mid, 30))


def _cluster_balls(clusters: List[RootCluster], prec: int) -> List[ComplexBall]:
    out = []
    for cl in clusters:
        (re, im), r = cl.centers[0], cl.radii[0]
        out.append(ComplexBall(RealBall(re, r, prec), RealBall(im, r, prec)))
    return out


def isolate_roots(
    P: IntPoly1,
    target_radius: Optional[float] = None,
    prec: Optional[int] = None,
    max_prec: int = DEFAULT_MAX_PREC,
) -> List[ComplexBall]:
    """Disjoint enclosures of the roots of ``P``, repeated by multiplicity.

    Each square-free factor is isolated separately and the precision ladder runs
    until every enclosure is a single disk of radius at most ``target_radius``
    and enclosures of distinct roots are pairwise disjoint.
    """
    if P.is_zero():
        raise DomainError("isolate_roots needs a nonzero polynomial")
    if P.degree == 0:
        return []
    prec = prec or default_precision()
    if target_radius is None:
        target_radius = 2.0 ** (-(prec - 16))
    tgt = libmp.from_float(float(target_radius))
    _, parts = P.to_sympy().sqf_list()
    factors = [(IntPoly1.from_sympy(f), int(m)) for f, m in parts]

    def accept_one(clusters, work):
        return all(cl.count == 1 and mpf_cmp(cl.radii[0], tgt) <= 0 for cl in clusters)

    work = START_PREC
    while True:
        collected = []
        for f, m in factors:
            clusters, used = _cluster_roots(f.coeffs, work, max_prec, accept_one)
            work = max(work, used)
            collected.append((_cluster_balls(clusters, used), m))
        balls = [b for bs, _ in collected for b in bs]
        if _pairwise_disjoint(balls) or work >= max_prec:
            if not _pairwise_disjoint(balls):
                raise PrecisionExhausted("roots of distinct factors could not be separated")
            break
        work *= 2
    out = []
    for bs, m in collected:
        for b in bs:
            out.extend([b] * m)
    out.sort(key=_sort_key)
    return out


def _pairwise_disjoint(balls: List[ComplexBall]) -> bool:
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if balls[i].overlaps(balls[j]):
                return False
    return True


def _log_plus_interval(lo, hi, prec: int) -> RealBall:
    one = libmp.from_int(1)
    if mpf_cmp(hi, one) <= 0:
        return RealBall.zero(prec)
    top = libmp.mpf_log(hi, prec + 8, round_ceiling)
    if mpf_cmp(lo, one) <= 0:
        return RealBall.from_interval(fzero, top, prec)
    bottom = libmp.mpf_log(lo, prec + 8, round_floor)
    return RealBall.from_interval(bottom, top, prec)


def _log_mahler_coeffs(coeffs: Coeffs, prec: int, max_prec: int, tol) -> RealBall:
    deg = len(coeffs) - 1
    lead = _as_complex_balls([coeffs[-1]], prec)[0]
    if lead.contains_zero():
        raise IndeterminateDegree("leading coefficient ball contains zero")
    head = lead.abs().log()
    if deg == 0:
        return head
    tol_mpf = libmp.from_float(float(tol))

    result = {}

    def accept(clusters, work):
        acc = RealBall.zero(prec)
        for cl in clusters:
            lo, hi = cl.modulus_bounds(work)
            acc = acc + _log_plus_interval(lo, hi, prec) * cl.count
        result["sum"] = acc
        return mpf_cmp(acc.rad, tol_mpf) <= 0

    try:
        _cluster_roots(coeffs, START_PREC, max_prec, accept)
    except PrecisionExhausted:
        if "sum" not in result:
            raise
    return head + result["sum"]


def log_mahler_1d(
    P: Union[IntPoly1, Coeffs],
    prec: Optional[int] = None,
    max_prec: int = DEFAULT_MAX_PREC,
    tol: Optional[float] = None,
) -> RealBall:
    """Enclosure of ``log M(P) = log|lead| + sum log+ |root|``.

    ``P`` is an IntPoly1 or a low-to-high coefficient sequence whose entries may be
    ints, Fractions, RealBalls or ComplexBalls.
    """
    prec = prec or default_precision()
    if isinstance(P, IntPoly1):
        if P.is_zero():
            raise DomainError("log Mahler measure of the zero polynomial")
        tol = tol if tol is not None else 2.0 ** (-(prec - 24))
        _, P = P.strip_x()
        lc, parts = P.to_sympy().sqf_list()
        acc = RealBall.exact(abs(int(lc)), prec + 8).log().with_prec(prec)
        for f, m in parts:
            q = IntPoly1.from_sympy(f)
            acc = acc + _log_mahler_coeffs(list(q.coeffs), prec, max_prec, tol) * int(m)
        return acc.clip_nonnegative()
    coeffs = list(P)
    while coeffs and not isinstance(coeffs[-1], (RealBall, ComplexBall)) and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("log Mahler measure of the zero polynomial")
    while len(coeffs) > 1 and not isinstance(coeffs[0], (RealBall, ComplexBall)) and coeffs[0] == 0:
        coeffs.pop(0)
    tol = tol if tol is not None else 2.0 ** (-(prec // 2))
    # extra precision cannot beat the uncertainty already in ball coefficients
    return _log_mahler_coeffs(coeffs, prec, min(max_prec, 4 * prec), tol)


# --------------------------------------------------------------------------- Kronecker


def _graeffe(coeffs: Sequence[int]) -> List[int]:
    """Monic polynomial whose roots are the squares of the roots of a monic input."""
    n = len(coeffs) - 1
    f = IntPoly1(coeffs)
    prod = (f * f.reflect()).coeffs
    out = [prod[2 * i] for i in range(n + 1)]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def kronecker_test(P: IntPoly1) -> bool:
    """True iff ``P = +-x^k * (product of cyclotomic polynomials)``.

    Exact: strips ``x^k`` and iterates the root-squaring map on the monic
    square-free part.  A product of cyclotomic polynomials maps to another one, so
    the orbit eventually repeats; any root off the unit circle makes some
    coefficient exceed the binomial bound.
    """
    if P.is_zero():
        raise DomainError("kronecker_test needs a nonzero polynomial")
    _, P = P.strip_x()
    if P.degree == 0:
        return abs(P.lc) == 1
    if abs(P.lc) != 1 or abs(P.coeffs[0]) != 1:
        return False
    state = squarefree_part(P)
    seen = set()
    while state.coeffs not in seen:
        seen.add(state.coeffs)
        n = state.degree
        if any(abs(c) > math.comb(n, k) for k, c in enumerate(state.coeffs)):
            return False
        state = squarefree_part(IntPoly1(_graeffe(state.coeffs)))
    return True
