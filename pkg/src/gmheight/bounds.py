"""Explicit lower bounds, parameter schedules and audits of the numerical inequalities behind them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from mpmath import libmp

from .analytic import kronecker_test
from .balls import RealBall, default_precision
from .curves import Curve, is_torsion_curve, normalized_height_curve
from .errors import DomainError, PrecisionExhausted
from .heights import Point2, is_torsion_point, point_height
from .siegel import corollary_degree

MIN_PREC = 128
MAX_PREC = 4096

THEOREM2_CONST = Fraction(12, 10**17)
PROP_IV1_CONST = Fraction(1, 5**6)
PROP_IV3_CONST = Fraction(1, 10**3)
COROLLARY_CONST = Fraction(2, 10**21)
CHAIN_CONST = Fraction(3, 10**17)
LEMMA_V3_CONST = Fraction(5, 10**4)
C1 = 37000
C2 = 2050000000
SIEVE_CONST = Fraction(41, 100)

DEFAULT_GRID = (16, 10**2, 10**4, 10**8, 10**12)
INEQ7_PAIRS = ((2, 2), (Fraction(1, 100), 1), (1, 2), (Fraction(8, 100), 6), (Fraction(1, 1000), 1))
SUITES = ("lemma_III2", "inequality7", "fait_IV2", "fait_IV4", "fait_V1", "fait_V4")

Number = Union[int, Fraction]


def _prec(prec: Optional[int]) -> int:
    return max(MIN_PREC, prec or default_precision())


def _ball(v: Number, prec: int) -> RealBall:
    return RealBall.exact(Fraction(v), prec)


def _log(v: Number, prec: int) -> RealBall:
    return RealBall.exact(Fraction(v), prec + 8).log().with_prec(prec)


def _ratio(v: Number, prec: int) -> RealBall:
    """``log v / log log v``."""
    lv = _log(v, prec)
    return lv / lv.log()


def _verdict(flag: Optional[bool]) -> str:
    return {True: "pass", False: "fail", None: "undecided"}[flag]


def _value_dict(b: Optional[RealBall]):
    return None if b is None else {"mid": b.mid_str(), "rad": b.rad_str()}


@dataclass
class BoundReport:
    kind: str
    inputs: dict
    bound_value: RealBall
    compared_against: Optional[RealBall]
    verdict: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": _jsonable(self.inputs),
            "bound_value": _value_dict(self.bound_value),
            "compared_against": _value_dict(self.compared_against),
            "verdict": self.verdict,
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, RealBall):
        return _value_dict(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    return str(obj)


# --------------------------------------------------------------------------- bound formulas


def _need_int(name: str, value, lo: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < lo:
        raise DomainError(f"{name} must be >= {lo}, got {value}")
    return value


def _theorem2(prec, omega):
    _need_int("omega", omega, 1)
    wp = max(omega, 16)
    lw = _log(wp, prec)
    return _ball(THEOREM2_CONST, prec) * lw.log() ** 11 / (lw**13 * omega)


def _prop_IV1(prec, D):
    _need_int("D", D, 1)
    r = _ratio(max(16, D), prec)
    return _ball(PROP_IV1_CONST, prec) / r**3


def _prop_IV3(prec, D, d=1):
    _need_int("D", D, 2)
    _need_int("d", d, 1)
    return _ball(PROP_IV3_CONST, prec) / (_ratio(D, prec) ** 3 * d)


def _corollary_I1(prec, D):
    _need_int("D", D, 1)
    return _ball(COROLLARY_CONST, prec) / _ball(D, prec).sqrt() / _log(3 * D, prec) ** 13


def _lemma_V3(prec, omega, D, degB=1):
    _need_int("omega", omega, 1)
    _need_int("D", D, 1)
    _need_int("degB", degB, 1)
    if D * degB < 2:
        raise DomainError("lemma_V3 needs D * deg(B) >= 2")
    return _ball(LEMMA_V3_CONST, prec) / (_ratio(D * degB, prec) ** 3 * omega)


def _voutier(prec, D):
    _need_int("D", D, 1)
    return 1 / (_log(3 * D, prec) ** 3 * (4 * D))


_FORMULAS: Dict[str, Callable] = {
    "theorem2": _theorem2,
    "prop_IV1": _prop_IV1,
    "prop_IV3": _prop_IV3,
    "corollary_I1": _corollary_I1,
    "lemma_V3": _lemma_V3,
    "voutier": _voutier,
}


def bound_value(kind: str, prec: Optional[int] = None, **args) -> RealBall:
    """Certified enclosure of a lower-bound formula.

    ``theorem2(omega)``, ``prop_IV1(D)``, ``prop_IV3(D, d)``, ``corollary_I1(D)``,
    ``lemma_V3(omega, D, degB)``, ``voutier(D)``.
    """
    try:
        fn = _FORMULAS[kind]
    except KeyError:
        raise DomainError(f"unknown bound kind {kind!r}") from None
    try:
        return fn(_prec(prec), **args)
    except TypeError as exc:
        raise DomainError(f"bad arguments for {kind}: {exc}") from None


# --------------------------------------------------------------------------- schedules


@dataclass
class ParamSchedule:
    kind: str
    inputs: dict
    T: int
    L: int
    N: Optional[RealBall] = None
    N1: Optional[RealBall] = None
    N2: Optional[RealBall] = None
    omega_prime: Optional[int] = None
    D_prime: Optional[int] = None
    c1: Optional[int] = None
    c2: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "inputs": dict(self.inputs), "T": self.T, "L": self.L}
        for name in ("N", "N1", "N2"):
            if getattr(self, name) is not None:
                out[name] = _value_dict(getattr(self, name))
        for name in ("omega_prime", "D_prime", "c1", "c2"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out


def _certified_ceil(fn: Callable[[int], RealBall], prec: int) -> int:
    while True:
        c = fn(prec).ceil_exact()
        if c is not None:
            return c
        if prec >= MAX_PREC:
            raise PrecisionExhausted("ceiling undecided at maximal precision")
        prec *= 2


def _T_IV1(D, prec):
    return _certified_ceil(lambda p: _ratio(max(16, D), p) * 5, prec)


def _T_IV2(D, prec):
    return _certified_ceil(lambda p: _ratio(D, p) * 3, prec)


def _T_V1(omega, prec):
    return _certified_ceil(lambda p: _ratio(max(omega, 16), p).sqr() * 9, prec)


def _N_IV1(D, prec):
    Dp = max(16, D)
    lD = _log(Dp, prec)
    return lD.sqr() / lD.log() * 625


def _N_IV2(D, prec):
    lD = _log(D, prec)
    return lD.sqr() / lD.log() * 175


def _N_V1(omega, prec):
    lw = _log(max(omega, 16), prec)
    llw = lw.log()
    return lw.sqr() / llw * C1, lw**8 / llw**6 * C2


def param_schedule(kind: str, prec: Optional[int] = None, **args) -> ParamSchedule:
    """``section_IV1(D)``, ``section_IV2(d, D)`` or ``section_V1(omega, D)``."""
    prec = _prec(prec)
    if kind == "section_IV1":
        D = _need_int("D", args.get("D"), 1)
        T = _T_IV1(D, prec)
        return ParamSchedule(kind, {"D": D}, T, D * T * T, N=_N_IV1(D, prec), D_prime=max(16, D))
    if kind == "section_IV2":
        D = _need_int("D", args.get("D"), 3)
        d = _need_int("d", args.get("d", 1), 1)
        T = _T_IV2(D, prec)
        return ParamSchedule(kind, {"d": d, "D": D}, T, d * T * T, N=_N_IV2(D, prec))
    if kind == "section_V1":
        omega = _need_int("omega", args.get("omega"), 1)
        D = _need_int("D", args.get("D"), 1)
        T = _T_V1(omega, prec)
        N1, N2 = _N_V1(omega, prec)
        return ParamSchedule(
            kind,
            {"omega": omega, "D": D},
            T,
            corollary_degree(T, D, omega),
            N1=N1,
            N2=N2,
            omega_prime=max(omega, 16),
            c1=C1,
            c2=C2,
        )
    raise DomainError(f"unknown schedule {kind!r}")


# --------------------------------------------------------------------------- audits


def _compare(
    kind: str,
    inputs: dict,
    sides: Callable[[int], Tuple[RealBall, RealBall]],
    prec: int,
    strict: bool = False,
    details: Optional[dict] = None,
) -> BoundReport:
    """Report for ``lhs >= rhs`` (``>`` if strict), refining precision while undecided."""
    while True:
        lhs, rhs = sides(prec)
        flag = lhs.gt(rhs) if strict else lhs.ge(rhs)
        if flag is not None or prec >= MAX_PREC:
            break
        prec *= 2
    return BoundReport(kind, inputs, rhs, lhs, _verdict(flag), dict(details or {}))


def _int_report(kind: str, inputs: dict, lhs: int, rhs: int, prec: int, details=None) -> BoundReport:
    return BoundReport(kind, inputs, _ball(rhs, prec), _ball(lhs, prec), _verdict(lhs >= rhs), dict(details or {}))


def _prime_counts(upto: int) -> List[int]:
    sieve = bytearray([1]) * (upto + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(upto) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, upto + 1, p)))
    counts = [0] * (upto + 1)
    c = 0
    for n in range(upto + 1):
        c += sieve[n]
        counts[n] = c
    return counts


def audit_lemma_III2(upto: int = 10**5, start: int = 41, prec: Optional[int] = None) -> BoundReport:
    """``pi(N) - pi(N/2) >= 0.41 N / log N`` for every integer ``start <= N <= upto``.

    ``pi(N/2)`` counts primes up to ``floor(N/2)``.  A float comparison with a
    safety margin settles almost every ``N``; the rest go through ball arithmetic.
    """
    prec = _prec(prec)
    if start < 2 or upto < start:
        raise DomainError("need 2 <= start <= upto")
    counts = _prime_counts(upto)
    failures = []
    ball_checked = 0
    worst_n, worst_margin = None, math.inf
    for n in range(start, upto + 1):
        have = counts[n] - counts[n // 2]
        need = 0.41 * n / math.log(n)
        margin = have - need
        if margin < worst_margin:
            worst_n, worst_margin = n, margin
        if margin > 1e-6 * max(1.0, need):
            continue
        ball_checked += 1
        ok = _ball(have, prec).ge(_ball(SIEVE_CONST * n, prec) / _log(n, prec))
        if ok is not True:
            failures.append(n)
    have = counts[worst_n] - counts[worst_n // 2]
    rhs = _ball(SIEVE_CONST * worst_n, prec) / _log(worst_n, prec)
    details = {
        "checked": upto - start + 1,
        "ball_checked": ball_checked,
        "failures": failures[:50],
        "failure_count": len(failures),
        "tightest_N": worst_n,
        "tightest_margin": f"{worst_margin:.6g}",
        "prime_count_N": counts[worst_n],
        "prime_count_half_N": counts[worst_n // 2],
    }
    verdict = "pass" if not failures else "fail"
    return BoundReport("lemma_III2", {"from": start, "to": upto}, rhs, _ball(have, prec), verdict, details)


def _log_grid(lo: float, hi: float, count: int) -> List[Fraction]:
    a, b = math.log(lo), math.log(hi)
    out = []
    for k in range(count):
        x = math.exp(a + (b - a) * k / (count - 1))
        out.append(Fraction(math.ceil(x * 1000), 1000))
    return out


def audit_inequality7(
    pairs: Sequence[Tuple[Number, Number]] = INEQ7_PAIRS,
    points: Optional[Sequence[Fraction]] = None,
    prec: Optional[int] = None,
) -> List[BoundReport]:
    """``x^a / (log x)^b >= (e a / b)^b`` on a logarithmic sample of ``[e^1.01, 10^6]``."""
    prec = _prec(prec)
    xs = list(points) if points is not None else _log_grid(math.exp(1.01), 1e6, 50)
    reports = []
    for a, b in pairs:
        a, b = Fraction(a), Fraction(b)
        failures, undecided = [], []
        worst = None
        for x in xs:
            if _log(x, prec).ge(_ball(Fraction(101, 100), prec)) is not True:
                raise DomainError(f"sample point {x} lies below e^1.01")

            def sides(p, x=x):
                lx = _log(x, p)
                lhs = (lx * _ball(a, p)).exp() / (lx.log() * _ball(b, p)).exp()
                rhs = ((_ball(1, p).exp() * _ball(a / b, p)).log() * _ball(b, p)).exp()
                return lhs, rhs

            rep = _compare("inequality7", {}, sides, prec)
            if rep.verdict == "fail":
                failures.append(str(x))
            elif rep.verdict == "undecided":
                undecided.append(str(x))
            gap = rep.compared_against - rep.bound_value
            if worst is None or gap.mid_float() < worst[0]:
                worst = (gap.mid_float(), x, rep)
        verdict = "fail" if failures else ("undecided" if undecided else "pass")
        details = {
            "samples": len(xs),
            "failures": failures,
            "undecided": undecided,
            "tightest_x": str(worst[1]),
        }
        reports.append(
            BoundReport(
                "inequality7",
                {"a": a, "b": b},
                worst[2].bound_value,
                worst[2].compared_against,
                verdict,
                details,
            )
        )
    return reports


def audit_fait_IV2(grid: Iterable[int] = DEFAULT_GRID, prec: Optional[int] = None) -> List[BoundReport]:
    prec = _prec(prec)
    out = []
    for D in grid:
        D = _need_int("D", D, 1)
        Dp = max(16, D)
        T = _T_IV1(D, prec)
        L = D * T * T
        inputs = {"D": D, "T": T, "L": L}

        def first(p, Dp=Dp, D=D):
            N = _N_IV1(D, p)
            return N / 2, (_log(Dp, p).log() * _ball(Fraction(199, 100), p)).exp()

        def second(p, D=D, T=T, L=L):
            N = _N_IV1(D, p)
            return (N / 2).log() * T, _log(L + 1, p) * _ball(Fraction(61, 10), p)

        out.append(_compare("fait_IV2.half_N", inputs, first, prec))
        out.append(_compare("fait_IV2.log_L", inputs, second, prec))
    return out


def audit_fait_IV4(grid: Iterable[int] = DEFAULT_GRID, prec: Optional[int] = None) -> List[BoundReport]:
    """Audit on ``(D, d)`` with ``d`` in ``{1, floor(D/81)}`` so that ``phi(m) = D/d >= 81``.

    Grid values below 81 are outside the statement's range and skipped.
    """
    prec = _prec(prec)
    out = []
    for D in grid:
        D = _need_int("D", D, 1)
        if D < 81:
            continue
        for d in sorted({1, D // 81}):
            phi = Fraction(D, d)
            T = _T_IV2(D, prec)
            L = d * T * T
            inputs = {"D": D, "d": d, "phi_m": phi, "T": T, "L": L}
            out.append(_int_report("fait_IV4.T", inputs, T, 8, prec))
            out.append(_int_report("fait_IV4.L", inputs, L, 64, prec))
            out.append(_compare("fait_IV4.N", inputs, lambda p, D=D: (_N_IV2(D, p), _ball(175, p)), prec))
            # T <= 3 D^(1/4)  <=>  T^4 <= 81 D
            rep = _int_report("fait_IV4.T_quartic", inputs, 81 * D, T**4, prec)
            rep.details["real_ratio_bound"] = _compare(
                "fait_IV4.T_real",
                inputs,
                lambda p, D=D: ((_ball(D, p).sqrt().sqrt()) * 3, _ratio(D, p) * 3),
                prec,
            ).verdict
            out.append(rep)

            def last(p, D=D, L=L, phi=phi):
                lhs = _log(D, p) * _ball(Fraction(32, 10), p) - _log(phi, p)
                return lhs, _log(L + 1, p) * _ball(Fraction(2125, 1000), p)

            out.append(_compare("fait_IV4.log_L", inputs, last, prec, strict=True))
    return out


def audit_fait_V1(grid: Iterable[int] = DEFAULT_GRID, prec: Optional[int] = None) -> List[BoundReport]:
    """Items of the section V parameter facts; ``L`` is bounded by its worst case ``2 omega' T^2``."""
    prec = _prec(prec)
    nine_e2 = _certified_ceil(lambda p: _ball(2, p).exp() * 9, prec)
    claimed = 66
    out = [
        BoundReport(
            "fait_V1.ceil_9e2",
            {"claimed": claimed},
            _ball(2, prec).exp() * 9,
            _ball(claimed, prec),
            "pass" if nine_e2 == claimed else "fail",
            {
                "claimed_ceiling": claimed,
                "computed_ceiling": nine_e2,
                "discrepancy": nine_e2 != claimed,
                "note": "downstream uses only T >= 66, audited per grid point",
            },
        )
    ]
    for w in grid:
        w = _need_int("omega", w, 1)
        wp = max(w, 16)
        T = _T_V1(wp, prec)
        L = 2 * wp * T * T
        inputs = {"omega_prime": wp, "T": T, "L": L}
        out.append(_int_report("fait_V1.T", inputs, T, claimed, prec))

        def n_sq(p, wp=wp):
            N1, N2 = _N_V1(wp, p)
            return N2, N1.sqr()

        def log_L(p, wp=wp, L=L):
            return _log(wp, p) * _ball(Fraction(43, 10), p), _log(L + 1, p)

        def log_N1(p, wp=wp):
            N1, _ = _N_V1(wp, p)
            return (N1 / 2).log(), _log(wp, p).log() * _ball(Fraction(1999, 1000), p)

        def log_N2(p, wp=wp):
            _, N2 = _N_V1(wp, p)
            return (N2 / 2).log(), _log(wp, p).log() * _ball(Fraction(792, 100), p)

        def ecc1(p, wp=wp, L=L):
            N1, _ = _N_V1(wp, p)
            return N1 / N1.log() / 100, _log(L, p) * 2 / _log(2, p)

        def ecc2(p, wp=wp, L=L):
            N1, N2 = _N_V1(wp, p)
            return N2 / N2.log() / 100, (N1 * (L * L)).log() * 2 / _log(2, p)

        out.append(_compare("fait_V1.N1_squared", inputs, n_sq, prec))
        out.append(_compare("fait_V1.log_L", inputs, log_L, prec))
        out.append(_compare("fait_V1.log_N1", inputs, log_N1, prec))
        out.append(_compare("fait_V1.log_N2", inputs, log_N2, prec))
        out.append(_compare("fait_V1.ecc_N1", inputs, ecc1, prec))
        out.append(_compare("fait_V1.ecc_N2", inputs, ecc2, prec))
    return out


def _smallest_above(value: RealBall) -> Optional[int]:
    """Least integer strictly greater than every point of ``value`` (None if undecided)."""
    lo = libmp.to_int(value.lower(), libmp.round_floor)
    hi = libmp.to_int(value.upper(), libmp.round_floor)
    return int(lo) + 1 if lo == hi else None


def audit_fait_V4(grid: Iterable[int] = DEFAULT_GRID, prec: Optional[int] = None) -> List[BoundReport]:
    """``T1 log N2 >= 15 log omega'`` with ``T1`` the least value allowed by each case of the proof.

    Case ``L + 1 <= p``: ``2 T1 > 0.999 T - 3.05``.
    Case ``L + 1 > p``: ``2 T1 + 3.05 > 0.999 T log(N1/2) / log(L+1)`` with ``L = 2 omega' T^2``.
    """
    prec = _prec(prec)
    out = []
    for w in grid:
        w = _need_int("omega", w, 1)
        wp = max(w, 16)
        T = _T_V1(wp, prec)
        L = 2 * wp * T * T
        for case in ("small_L", "large_L"):

            def t1_bound(p, case=case, wp=wp, T=T, L=L):
                base = _ball(T, p) * _ball(Fraction(999, 1000), p)
                if case == "large_L":
                    N1, _ = _N_V1(wp, p)
                    base = base * (N1 / 2).log() / _log(L + 1, p)
                return (base - _ball(Fraction(305, 100), p)) / 2

            p = prec
            while True:
                T1 = _smallest_above(t1_bound(p))
                if T1 is not None or p >= MAX_PREC:
                    break
                p *= 2
            if T1 is None:
                raise PrecisionExhausted("vanishing-order floor undecided")
            T1 = max(T1, 0)
            inputs = {"omega_prime": wp, "T": T, "L": L, "case": case, "T1": T1}

            def sides(p, wp=wp, T1=T1):
                _, N2 = _N_V1(wp, p)
                return N2.log() * T1, _log(wp, p) * 15

            out.append(_compare("fait_V4", inputs, sides, prec))
    return out


def audit_inequalities(
    suite: str = "all",
    grid: Optional[Iterable[int]] = None,
    upto: int = 10**5,
    prec: Optional[int] = None,
) -> List[BoundReport]:
    """Run one audit suite (or ``"all"``); failures are verdicts, never exceptions."""
    suite = suite.replace("-", "_")
    if suite != "all" and suite not in SUITES:
        raise DomainError(f"unknown audit suite {suite!r}")
    grid = tuple(grid) if grid is not None else DEFAULT_GRID
    runners = {
        "lemma_III2": lambda: [audit_lemma_III2(upto, prec=prec)],
        "inequality7": lambda: audit_inequality7(prec=prec),
        "fait_IV2": lambda: audit_fait_IV2(grid, prec),
        "fait_IV4": lambda: audit_fait_IV4(grid, prec),
        "fait_V1": lambda: audit_fait_V1(grid, prec),
        "fait_V4": lambda: audit_fait_V4(grid, prec),
    }
    names = SUITES if suite == "all" else (suite,)
    out: List[BoundReport] = []
    for name in names:
        out.extend(runners[name]())
    return out


# --------------------------------------------------------------------------- verification on inputs


def _require_nontorsion_curve(C: Curve):
    torsion, _ = is_torsion_curve(C)
    if torsion:
        raise DomainError("the curve is a torsion curve")


def verify_bound(
    target: Union[Point2, Curve],
    kind: str,
    curve: Optional[Curve] = None,
    prec: Optional[int] = None,
    tol: float = 1e-6,
) -> BoundReport:
    """Compute the relevant height and compare it with the bound of ``kind``.

    ``theorem2``: a point and a curve through it.  ``prop_IV1``: a curve.
    ``corollary_I1``: a point whose coordinates the caller asserts are
    multiplicatively independent; the report carries the intermediate steps.
    """
    prec = _prec(prec)
    if kind == "theorem2":
        if not isinstance(target, Point2) or curve is None:
            raise DomainError("theorem2 needs a point and a curve containing it")
        value = curve.P(target.x, target.y)
        if not (value == 0 if isinstance(value, int) else value.is_zero()):
            raise DomainError("the point does not lie on the curve")
        _require_nontorsion_curve(curve)
        if is_torsion_point(target):
            raise DomainError("the point is torsion")
        omega = curve.degree
        b = bound_value("theorem2", prec, omega=omega)
        h = point_height(target, prec)
        details = {"omega": omega, "curve": curve.to_text(), "irreducibility": curve.irreducibility_verdict}
        return BoundReport(kind, {"point": target.to_dict(), "curve": curve.to_text()}, b, h, _verdict(h.ge(b)), details)
    if kind == "prop_IV1":
        C = target if isinstance(target, Curve) else curve
        if C is None:
            raise DomainError("prop_IV1 needs a curve")
        _require_nontorsion_curve(C)
        D = C.degree
        b = bound_value("prop_IV1", prec, D=D)
        h = normalized_height_curve(C, tol=tol)
        details = {"degree": D, "essential_minimum_upper": h / D, "irreducibility": C.irreducibility_verdict}
        return BoundReport(kind, {"curve": C.to_text()}, b, h, _verdict(h.ge(b)), details)
    if kind == "corollary_I1":
        if not isinstance(target, Point2):
            raise DomainError("corollary_I1 needs a point")
        return _verify_corollary(target, prec)
    raise DomainError(f"verify_bound does not handle kind {kind!r}")


def _verify_corollary(p: Point2, prec: int) -> BoundReport:
    if kronecker_test(p.minpoly_x) or kronecker_test(p.minpoly_y):
        raise DomainError("a coordinate is a root of unity; coordinates cannot be independent")
    D = p.generated_degree
    hx = _coord_height(p.minpoly_x, prec)
    hy = _coord_height(p.minpoly_y, prec)
    product = (hx * hy).sqrt()
    b = bound_value("corollary_I1", prec, D=D)
    trail = _corollary_trail(hx, hy, D, prec)
    details = {"D": D, "h_x": hx, "h_y": hy, "audit_trail": trail}
    return BoundReport("corollary_I1", {"point": p.to_dict()}, b, product, _verdict(product.ge(b)), details)


def _coord_height(minpoly, prec: int) -> RealBall:
    from .heights import height_algebraic

    return height_algebraic(minpoly, prec)


def _corollary_trail(hx: RealBall, hy: RealBall, D: int, prec: int) -> dict:
    """Intermediate quantities of the reduction from the two-coordinate corollary to the curve bound."""
    order = hx.le(hy)
    h1, h2 = (hx, hy) if order is not False else (hy, hx)
    ratio = h2 * 2 / h1
    A = ratio.ceil_exact()
    if A is None:
        A = ratio.floor_ceil()[1]
    h_beta = h1 + h2 / A
    omega_beta = (_ball(A * D, prec).sqrt()) * 2
    log_omega = omega_beta.log().max(_log(16, prec))
    chain = _ball(CHAIN_CONST, prec) / (_ball(2 * D, prec)).sqrt() / log_omega**13
    lhs = (h1 * h2).sqrt()
    vout = bound_value("voutier", prec, D=D)
    two_log = _log(3 * D, prec) * 2
    return {
        "A": A,
        "h_small": h1,
        "h_large": h2,
        "hypotheses_h_le_1": h2.le(1) is True,
        "hypothesis_D_ge_2": D >= 2,
        "h_beta_upper": h_beta,
        "h_beta_le_2h_small": _verdict(h_beta.le(h1 * 2)),
        "omega_beta_upper": omega_beta,
        "inequality_20_bound": chain,
        "inequality_20": _verdict(lhs.ge(chain)),
        "voutier_bound": vout,
        "voutier_step": _verdict(h1.ge(vout)),
        "log_omega_beta": omega_beta.log(),
        "log_omega_le_2log3D": _verdict(omega_beta.log().le(two_log)),
    }
