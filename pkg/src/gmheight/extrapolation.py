"""Vanishing orders, the Frobenius action on coefficients, and the extrapolation inequality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import is_prime
from .balls import RealBall, default_precision
from .errors import DomainError, InternalError, RamifiedPrime
from .fields import NumberField, compositum
from .heights import Point2, point_height, power_point
from .kpoly import KPoly2
from .polys import IntPoly2
from .siegel import polynomial_height

Poly = Union[IntPoly2, KPoly2]

N_VARIABLES = 2


def _evaluator(F: Poly, p: Point2):
    """Callable ``G -> G(p)`` for divided derivatives ``G`` of ``F``."""
    if isinstance(F, IntPoly2):
        return lambda G: G(p.x, p.y)
    k = F.field
    if k.degree == 1:
        return lambda G: G.evaluate(lambda c: p.field(c.rational()), p.x, p.y)
    L, ep, ek = compositum(p.field, k)
    x, y = ep(p.x), ep(p.y)
    return lambda G: G.evaluate(ek, x, y)


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def vanishing_order(F: Poly, p: Point2, T_max: int) -> int:
    """Smallest ``|lambda| <= T_max`` with ``D_lambda F (p) != 0``, else ``T_max + 1``."""
    if F.is_zero():
        raise DomainError("vanishing order of the zero polynomial")
    ev = _evaluator(F, p)
    for s in range(T_max + 1):
        for la in range(s, -1, -1):
            if not _is_zero(ev(F.divided_derivative(la, s - la))):
                return s
    return T_max + 1


def frobenius_apply(F: Poly, prime: int, m: int) -> Poly:
    """Apply ``zeta_m -> zeta_m^prime`` to every coefficient of ``F``."""
    if m < 1:
        raise DomainError("conductor must be positive")
    if not is_prime(prime):
        raise DomainError(f"{prime} is not prime")
    if m % prime == 0:
        raise RamifiedPrime(f"{prime} divides the conductor {m}")
    if isinstance(F, IntPoly2) or m == 1 or prime % m == 1:
        return F
    k = F.field
    if k != NumberField.cyclotomic(m):
        raise DomainError("coefficient field is not the cyclotomic field of the given conductor")
    image = k.gen() ** (prime % m)
    powers = [k.one()]
    for _ in range(k.degree - 1):
        powers.append(powers[-1] * image)

    def sigma(c):
        acc = k.zero()
        for a, w in zip(c.coords, powers):
            if a:
                acc = acc + w * a
        return acc

    return F.map_coefficients(sigma)


@dataclass
class ExtrapolationReport:
    p: int
    T: int
    L: int
    T1_observed: int
    epsilon: RealBall
    lhs: RealBall
    height_F: RealBall
    height_alpha: RealBall
    inequality_holds: Optional[bool]
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return {True: "pass", False: "fail", None: "undecided"}[self.inequality_holds]


def extrapolation_report(
    F: Poly,
    point: Point2,
    prime: int,
    T: int,
    L: int,
    prec: Optional[int] = None,
    max_prec: int = 16384,
) -> ExtrapolationReport:
    """Observe the order of ``F^phi_p`` at ``alpha^p`` and certify the lower bound it must satisfy."""
    if T < 0 or L < 0:
        raise DomainError("T and L must be nonnegative")
    if F.total_degree > L:
        raise DomainError(f"F has degree {F.total_degree} > L = {L}")
    m = F.field.conductor or 1 if isinstance(F, KPoly2) else 1
    Fp = frobenius_apply(F, prime, m)
    if T > 0 and vanishing_order(F, point, T - 1) < T:
        raise DomainError(f"F does not vanish to order {T} at the point")
    target = power_point(point, prime)
    T1 = vanishing_order(Fp, target, max(L, T))
    prec = prec or default_precision()
    while True:
        hF = polynomial_height(F, prec)
        ha = point_height(point, prec)
        log_p = RealBall.exact(prime, prec + 8).log().with_prec(prec)
        log_L = RealBall.exact(L + 1, prec + 8).log().with_prec(prec)
        eps = log_p * T - hF - ha * (prime * L) - log_L * N_VARIABLES
        lhs = (log_L + log_p) * T1
        holds = lhs.gt(eps)
        if holds is not None or prec >= max_prec:
            break
        prec *= 2
    positive = eps.gt(0)
    if positive is True and T1 < 1:
        raise InternalError("certified positive epsilon but F^phi_p does not vanish at alpha^p")
    details = {"epsilon_positive": positive, "frobenius_identity": Fp == F, "prec": prec}
    return ExtrapolationReport(prime, T, L, T1, eps, lhs, hF, ha, holds, details)
