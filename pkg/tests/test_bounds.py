import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import corpus_curves, corpus_points
from gmheight import (
    Curve,
    DomainError,
    NumberField,
    Point2,
    audit_inequalities,
    bound_value,
    param_schedule,
    verify_bound,
)
from gmheight.bounds import audit_lemma_III2

# frozen from an independent mpmath evaluation at 60 digits
THEOREM2_16 = "1.6260298882441371562676213912956e-23"
PROP_IV1_16 = "3.18452694728297580810623211652602e-6"
VOUTIER_1 = "0.188541366739736891370133269386662751"
COROLLARY_2 = "7.20906247821649995477e-25"


def _rel(ball, ref):
    r = float(ref)
    return abs(ball.mid_float() - r) / abs(r)


@pytest.mark.parametrize(
    "kind, args, ref",
    [
        ("theorem2", {"omega": 16}, THEOREM2_16),
        ("prop_IV1", {"D": 16}, PROP_IV1_16),
        ("voutier", {"D": 1}, VOUTIER_1),
        ("corollary_I1", {"D": 2}, COROLLARY_2),
    ],
)
def test_bound_values_match_oracle(kind, args, ref):
    b = bound_value(kind, **args)
    assert _rel(b, ref) < 1e-12
    assert b.rad_float() < 1e-6 * float(ref)


@pytest.mark.parametrize(
    "kind, args",
    [
        ("theorem2", {"omega": 0}),
        ("prop_IV1", {"D": 0}),
        ("prop_IV3", {"D": 1, "d": 1}),
        ("lemma_V3", {"omega": 1, "D": 1, "degB": 1}),
        ("nonsense", {"D": 3}),
        ("theorem2", {}),
    ],
)
def test_bound_domain_errors(kind, args):
    with pytest.raises(DomainError):
        bound_value(kind, **args)


@given(st.integers(min_value=16, max_value=10**6))
def test_theorem2_decreasing(omega):
    assert bound_value("theorem2", omega=omega).gt(bound_value("theorem2", omega=omega + 1)) is True


@given(st.integers(min_value=1, max_value=10**6))
def test_bounds_positive(D):
    for kind in ("prop_IV1", "voutier", "corollary_I1"):
        assert bound_value(kind, D=max(D, 2) if kind == "corollary_I1" else D).gt(0) is True


def test_schedules():
    s = param_schedule("section_V1", omega=16, D=4)
    assert (s.T, s.L) == (67, 1114)
    assert param_schedule("section_IV1", D=16).T == 14
    assert param_schedule("section_IV2", d=1, D=16).T == 9
    json.dumps(s.to_dict())
    with pytest.raises(DomainError):
        param_schedule("section_IV2", d=1, D=2)


def test_lemma_sieve():
    r = audit_lemma_III2(10**5)
    assert r.verdict == "pass"
    assert r.details["failures"] == []


def test_audit_known_discrepancies():
    reports = audit_inequalities("all", upto=10**4)
    assert all(r.verdict in ("pass", "fail") for r in reports)
    fails = {r.kind: r for r in reports if r.verdict == "fail"}
    assert set(fails) == {"fait_IV4.T_quartic", "fait_V1.ceil_9e2"}
    v1 = fails["fait_V1.ceil_9e2"].details
    assert (v1["claimed_ceiling"], v1["computed_ceiling"], v1["discrepancy"]) == (66, 67, True)
    iv4 = fails["fait_IV4.T_quartic"]
    assert iv4.inputs["D"] == 100 and iv4.details["real_ratio_bound"] == "pass"
    json.dumps([r.to_dict() for r in reports])


def test_audit_suite_names():
    assert audit_inequalities("lemma-III2", upto=1000)[0].verdict == "pass"
    with pytest.raises(DomainError):
        audit_inequalities("bogus")


def test_verify_theorem2_on_line():
    r = verify_bound(Point2.rational(2, 3), "theorem2", curve=Curve("x+y-5"))
    assert r.verdict == "pass"
    assert r.details["omega"] == 1


def test_verify_theorem2_zeta3_on_horizontal_line():
    z3 = NumberField.cyclotomic(3)
    assert verify_bound(Point2(z3, z3.gen(), z3(2)), "theorem2", curve=Curve("y-2")).verdict == "pass"


def test_verify_rejects_torsion():
    z = NumberField.cyclotomic(15)
    g = z.gen()
    with pytest.raises(DomainError):
        verify_bound(Point2(z, g**5, g**3), "theorem2", curve=Curve("x^2+x+1"))
    with pytest.raises(DomainError):
        verify_bound(Curve("x*y-1"), "prop_IV1")
    with pytest.raises(DomainError):
        verify_bound(Point2.rational(2, 3), "theorem2", curve=Curve("x+y-1"))


@pytest.mark.parametrize("name, C, torsion", [c for c in corpus_curves() if not c[2]], ids=lambda v: v if isinstance(v, str) else "")
def test_verify_prop_IV1_on_corpus(name, C, torsion):
    r = verify_bound(C, "prop_IV1")
    assert r.verdict == "pass"
    assert "essential_minimum_upper" in r.details


INDEPENDENT = {"two_three", "half_three", "sqrt2_sqrt3", "fractions", "sqrt2_one_plus", "golden_two", "cbrt2_three", "plastic", "sqrt3_sqrt2", "sqrt3_t", "salem_two"}


@pytest.mark.parametrize("name, p, torsion", [c for c in corpus_points() if c[0] in INDEPENDENT], ids=lambda v: v if isinstance(v, str) else "")
def test_verify_corollary_on_corpus(name, p, torsion):
    r = verify_bound(p, "corollary_I1")
    assert r.verdict in ("pass", "fail")
    assert "audit_trail" in r.details
    if r.verdict == "pass":
        assert r.compared_against.ge(r.bound_value) is True


def test_report_round_trip():
    r = verify_bound(Curve("x+y-1"), "prop_IV1")
    d = json.loads(json.dumps(r.to_dict()))
    assert set(d) >= {"kind", "inputs", "bound_value", "compared_against", "verdict", "details"}
