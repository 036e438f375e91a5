"""Command-line front end.

Every command builds a :class:`CommandResult`; ``main`` prints it as a table or
as JSON and exits with its code (0 ok, 1 failed verdict, 2 bad input, 3 undecided).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .analytic import kronecker_test
from .balls import RealBall
from .bounds import BoundReport, audit_inequalities, bound_value, param_schedule, verify_bound
from .curves import Curve, ecc_primes, is_torsion_curve, normalized_height_curve, power_image
from .errors import BoundUnmet, DomainError, InternalError, ParseError, PrecisionExhausted
from .extrapolation import extrapolation_report
from .fields import NumberField
from .heights import Point2, height_algebraic, is_torsion_point, point_height, power_point
from .kpoly import KPoly2
from .obstruction import obstruction_index
from .polys import IntPoly1, IntPoly2
from .siegel import construct_auxiliary

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3
PRINT_DIGITS = 20


class UsageError(DomainError):
    pass


@dataclass
class CommandResult:
    command: str
    inputs: dict
    value: Optional[RealBall] = None
    verdict: Optional[str] = None
    details: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_json_dict(self) -> dict:
        out = {"command": self.command, "inputs": _plain(self.inputs)}
        if self.value is not None:
            out["value"] = {"mid": self.value.mid_str(), "rad": self.value.rad_str()}
        if self.verdict is not None:
            out["verdict"] = self.verdict
        out["details"] = _plain(self.details)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False)

    def to_table(self) -> str:
        lines = [f"command   {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"  {k:<15} {_short(v)}")
        if self.value is not None:
            lines.append(f"value     {self.value.mid_str(PRINT_DIGITS)} +/- {self.value.rad_str()}")
        if self.verdict is not None:
            lines.append(f"verdict   {self.verdict}")
        for k, v in self.details.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{k}:")
                lines.extend(f"  {_row(r)}" for r in v)
            else:
                lines.append(f"  {k:<15} {_short(v)}")
        return "\n".join(lines)


def _plain(obj):
    if isinstance(obj, RealBall):
        return {"mid": obj.mid_str(), "rad": obj.rad_str()}
    if isinstance(obj, BoundReport):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    return str(obj)


def _short(v) -> str:
    v = _plain(v)
    if isinstance(v, dict) and set(v) == {"mid", "rad"}:
        mid = v["mid"]
        return f"{RealBall.exact(Fraction(mid)).mid_str(PRINT_DIGITS) if _is_decimal(mid) else mid} +/- {v['rad']}"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def _is_decimal(s: str) -> bool:
    try:
        Fraction(s)
        return True
    except ValueError:
        return False


def _row(r: dict) -> str:
    cmp = r.get("compared_against")
    bv = r.get("bound_value")
    parts = [r.get("verdict", ""), r.get("kind", ""), json.dumps(r.get("inputs", {}))]
    if cmp and bv:
        parts.append(f"lhs={_short(cmp).split(' +/-')[0]} rhs={_short(bv).split(' +/-')[0]}")
    return "  ".join(parts)


# --------------------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    env = os.environ.get("GMHEIGHT_PREC")
    p.add_argument("--prec", type=int, default=d(int(env) if env else 256), help="working precision in bits")
    p.add_argument("--max-prec", type=int, default=d(16384), help="precision cap in bits")
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--tol", type=float, default=d(1e-6), help="quadrature tolerance")


def _point_flags(p):
    p.add_argument("--point", help='JSON object {"field": ..., "x": ..., "y": ...}')
    p.add_argument("--field", help="generator of the coordinate field, in t")
    p.add_argument("--x", help="first coordinate (polynomial in t)")
    p.add_argument("--y", help="second coordinate (polynomial in t)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmheight", description="Heights and small points on the two-dimensional torus.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        return p

    p = add("height", "height of an algebraic number from its minimal polynomial")
    p.add_argument("--minpoly", required=True)

    p = add("point-height", "height of a point of the torus")
    _point_flags(p)

    p = add("torsion", "root-of-unity test for a polynomial or a point")
    p.add_argument("--poly", help="integer polynomial in x")
    _point_flags(p)

    p = add("power", "coordinatewise power of a point")
    _point_flags(p)
    p.add_argument("--l", type=int, required=True)

    p = add("obstruction", "obstruction index of a point")
    _point_flags(p)
    p.add_argument("--conductor", type=int, help="work over the cyclotomic field of this conductor")

    p = add("siegel", "auxiliary polynomial vanishing at a point")
    _point_flags(p)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--omega", type=int, help="obstruction index (computed when omitted)")
    p.add_argument("--max-nodes", type=int, default=200000)

    p = add("extrapolate", "vanishing order at the power point and the extrapolation inequality")
    _point_flags(p)
    p.add_argument("--poly", required=True, help="auxiliary polynomial in x, y (and t over a cyclotomic field)")
    p.add_argument("--conductor", type=int)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--L", type=int, required=True)

    for name, text in (("curve-height", "normalized height of a curve"), ("curve-torsion", "torsion test for a curve")):
        p = add(name, text)
        p.add_argument("--curve", required=True)

    p = add("power-image", "equation of the image of a curve under the l-th power map")
    p.add_argument("--curve", required=True)
    p.add_argument("--l", type=int, required=True)

    p = add("ecc", "primes whose power image drops the degree")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("bound", "evaluate a lower-bound formula")
    p.add_argument("--kind", required=True)
    for flag in ("--omega", "--D", "--d", "--degB"):
        p.add_argument(flag, type=int)

    p = add("params", "parameter schedule")
    p.add_argument("--kind", required=True, choices=["section_IV1", "section_IV2", "section_V1"])
    for flag in ("--omega", "--D", "--d"):
        p.add_argument(flag, type=int)

    p = add("verify", "check a computed height against a lower bound")
    p.add_argument("--kind", required=True, choices=["theorem2", "prop_IV1", "corollary_I1"])
    p.add_argument("--curve")
    _point_flags(p)

    p = add("audit", "audit the numerical inequalities")
    p.add_argument("--suite", default="all")
    p.add_argument("--to", type=int, default=100000, help="upper end of the prime-counting range")
    p.add_argument("--grid", help="comma-separated parameter values")
    return parser


# --------------------------------------------------------------------------- input helpers


def _field(text: Optional[str]) -> NumberField:
    return NumberField(text) if text else NumberField.rationals()


def _point(args) -> Point2:
    if args.point:
        try:
            data = json.loads(args.point)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--point is not valid JSON: {exc.msg} at position {exc.pos}") from None
        if not isinstance(data, dict) or "x" not in data or "y" not in data:
            raise UsageError('--point needs an object with "x" and "y"')
        return Point2.from_dict(data)
    if args.x is None or args.y is None:
        raise UsageError("give a point with --point or with --x and --y")
    K = _field(args.field)
    return Point2(K, K.parse(args.x), K.parse(args.y))


def _curve(text: str) -> Curve:
    return Curve(IntPoly2.parse(text))


def _verdict_code(verdict: Optional[str]) -> int:
    return {None: EXIT_OK, "pass": EXIT_OK, "fail": EXIT_FAIL, "undecided": EXIT_UNDECIDED}[verdict]


def _report_result(command: str, inputs: dict, rep: BoundReport) -> CommandResult:
    details = {"kind": rep.kind, "bound": rep.bound_value}
    details.update(rep.details)
    return CommandResult(command, inputs, rep.compared_against, rep.verdict, details, _verdict_code(rep.verdict))


# --------------------------------------------------------------------------- commands


def _cmd_height(a):
    P = IntPoly1.parse(a.minpoly, "x")
    return CommandResult("height", {"minpoly": P.to_text()}, height_algebraic(P, a.prec, a.max_prec))


def _cmd_point_height(a):
    p = _point(a)
    return CommandResult("point-height", {"point": p.to_dict()}, point_height(p, a.prec), details={"degree": p.generated_degree})


def _cmd_torsion(a):
    if a.poly:
        P = IntPoly1.parse(a.poly, "x")
        return CommandResult("torsion", {"poly": P.to_text()}, details={"all_roots_of_unity": kronecker_test(P)})
    p = _point(a)
    return CommandResult("torsion", {"point": p.to_dict()}, details={"torsion": is_torsion_point(p)})


def _cmd_power(a):
    p = _point(a)
    q = power_point(p, a.l)
    h = point_height(q, a.prec)
    details = {"image": q.to_dict(), "l_times_height": point_height(p, a.prec) * a.l}
    return CommandResult("power", {"point": p.to_dict(), "l": a.l}, h, details=details)


def _cmd_obstruction(a):
    p = _point(a)
    k = NumberField.cyclotomic(a.conductor) if a.conductor else None
    omega, witness = obstruction_index(p, k)
    inputs = {"point": p.to_dict(), "conductor": a.conductor or 1}
    return CommandResult("obstruction", inputs, details={"omega": omega, "witness": witness.to_text()})


def _cmd_siegel(a):
    p = _point(a)
    omega = a.omega if a.omega is not None else obstruction_index(p)[0]
    inputs = {"point": p.to_dict(), "T": a.T, "omega": omega}
    try:
        res = construct_auxiliary(p, a.T, omega, a.prec, a.max_nodes)
    except BoundUnmet as exc:
        best = exc.best.to_text() if exc.best is not None else None
        return CommandResult("siegel", inputs, verdict="fail", details={"reason": str(exc), "best": best}, exit_code=EXIT_FAIL)
    details = {"F": res.F.to_text(), "L": res.L, "bound": res.bound}
    details.update(res.details)
    return CommandResult("siegel", inputs, res.height_F, "pass", details)


def _cmd_extrapolate(a):
    p = _point(a)
    if a.conductor and a.conductor > 1:
        F = KPoly2.parse(a.poly, NumberField.cyclotomic(a.conductor))
    else:
        F = IntPoly2.parse(a.poly)
    rep = extrapolation_report(F, p, a.prime, a.T, a.L, a.prec, a.max_prec)
    inputs = {"point": p.to_dict(), "poly": F.to_text(), "prime": a.prime, "T": a.T, "L": a.L}
    details = {
        "T1_observed": rep.T1_observed,
        "epsilon": rep.epsilon,
        "lhs": rep.lhs,
        "height_F": rep.height_F,
        "height_point": rep.height_alpha,
    }
    details.update(rep.details)
    return CommandResult("extrapolate", inputs, rep.epsilon, rep.verdict, details, _verdict_code(rep.verdict))


def _cmd_curve_height(a):
    C = _curve(a.curve)
    h = normalized_height_curve(C, tol=a.tol)
    return CommandResult("curve-height", {"curve": C.to_text()}, h, details={"degree": C.degree})


def _cmd_curve_torsion(a):
    C = _curve(a.curve)
    torsion, data = is_torsion_curve(C)
    details = {"torsion": torsion, "irreducibility": C.irreducibility_verdict}
    if data is not None:
        details.update({"a": data.a, "b": data.b, "zeta_order": data.zeta_order})
    return CommandResult("curve-torsion", {"curve": C.to_text()}, details=details)


def _cmd_power_image(a):
    C = _curve(a.curve)
    img = power_image(C, a.l)
    return CommandResult("power-image", {"curve": C.to_text(), "l": a.l}, details={"image": img.to_text(), "degree": img.degree})


def _cmd_ecc(a):
    C = _curve(a.curve)
    primes = sorted(ecc_primes(C, a.bound))
    return CommandResult("ecc", {"curve": C.to_text(), "bound": a.bound}, details={"primes": primes, "degree": C.degree})


def _int_args(a, names):
    return {n: getattr(a, n) for n in names if getattr(a, n, None) is not None}


def _cmd_bound(a):
    args = _int_args(a, ("omega", "D", "d", "degB"))
    return CommandResult("bound", {"kind": a.kind, **args}, bound_value(a.kind, a.prec, **args))


def _cmd_params(a):
    args = _int_args(a, ("omega", "D", "d"))
    s = param_schedule(a.kind, a.prec, **args).to_dict()
    s.pop("inputs")
    return CommandResult("params", {"kind": a.kind, **args}, details=s)


def _cmd_verify(a):
    if a.kind == "prop_IV1":
        if not a.curve:
            raise UsageError("prop_IV1 needs --curve")
        C = _curve(a.curve)
        rep = verify_bound(C, a.kind, prec=a.prec, tol=a.tol)
        return _report_result("verify", {"kind": a.kind, "curve": C.to_text()}, rep)
    p = _point(a)
    C = _curve(a.curve) if a.curve else None
    rep = verify_bound(p, a.kind, curve=C, prec=a.prec, tol=a.tol)
    inputs = {"kind": a.kind, "point": p.to_dict()}
    if C is not None:
        inputs["curve"] = C.to_text()
    return _report_result("verify", inputs, rep)


def _cmd_audit(a):
    grid = None
    if a.grid:
        try:
            grid = [int(Fraction(g.strip())) for g in a.grid.split(",") if g.strip()]
        except ValueError:
            bad = next(g for g in a.grid.split(",") if not _is_decimal(g.strip()))
            raise UsageError(f"grid value {bad.strip()!r} is not a number") from None
    reports = audit_inequalities(a.suite, grid, a.to, a.prec)
    verdicts = {r.verdict for r in reports}
    verdict = "fail" if "fail" in verdicts else ("undecided" if "undecided" in verdicts else "pass")
    counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "undecided")}
    inputs = {"suite": a.suite, "to": a.to}
    if grid:
        inputs["grid"] = grid
    details = {"counts": counts, "reports": [r.to_dict() for r in reports]}
    return CommandResult("audit", inputs, verdict=verdict, details=details, exit_code=_verdict_code(verdict))


COMMANDS = {
    "height": _cmd_height,
    "point-height": _cmd_point_height,
    "torsion": _cmd_torsion,
    "power": _cmd_power,
    "obstruction": _cmd_obstruction,
    "siegel": _cmd_siegel,
    "extrapolate": _cmd_extrapolate,
    "curve-height": _cmd_curve_height,
    "curve-torsion": _cmd_curve_torsion,
    "power-image": _cmd_power_image,
    "ecc": _cmd_ecc,
    "bound": _cmd_bound,
    "params": _cmd_params,
    "verify": _cmd_verify,
    "audit": _cmd_audit,
}


def _error_result(command: str, message: str, code: int, token: Optional[str] = None) -> CommandResult:
    details = {"error": message}
    if token is not None:
        details["token"] = token
    return CommandResult(command, {}, details=details, exit_code=code)


def run_command(argv: Sequence[str]) -> CommandResult:
    """Parse ``argv`` and run the command; errors become results with exit codes 2 or 3."""
    argv = list(argv)
    command = next((t for t in argv if t in COMMANDS), argv[0] if argv else "")
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error_result(command, str(exc), EXIT_INPUT)
    if args.prec < 2 or args.max_prec < args.prec:
        return _error_result(args.command, "need 2 <= --prec <= --max-prec", EXIT_INPUT)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        return _error_result(args.command, str(exc), EXIT_INPUT, exc.token)
    except PrecisionExhausted as exc:
        return _error_result(args.command, str(exc), EXIT_UNDECIDED)
    except (DomainError, ZeroDivisionError) as exc:
        return _error_result(args.command, str(exc), EXIT_INPUT)
    except InternalError as exc:
        return _error_result(args.command, f"internal error: {exc}", EXIT_FAIL)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help") or "-h" in argv or "--help" in argv:
        try:
            build_parser().parse_args(list(argv) or ["--help"])
        except SystemExit as exc:
            return int(exc.code or 0)
    result = run_command(argv)
    as_json = "--json" in argv
    if as_json:
        print(result.to_json())
    else:
        text = result.to_table()
        stream = sys.stderr if result.exit_code == EXIT_INPUT and "error" in result.details else sys.stdout
        print(text, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
