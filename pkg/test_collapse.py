"""
collapsing 判定与扫描测试
"""

import json
from dataclasses import replace
from fractions import Fraction

import pytest

from core import collapse
from core.collapse import (
    COLLAPSING,
    FINITE_EXTENSION,
    PROOF_ASYMPTOTIC,
    PROOF_EVEN,
    TSV_HEADER,
    UNSUPPORTED,
    CollapseCertificate,
    KnatPoint,
    KnatReport,
    match,
    solve_central_charge_in_p,
    sweep,
    verify_knat_admissibility,
)
from core.errors import NotAdmissibleError
from core.liealg import parse_algebra
from core.orbits import make_orbit
from core.scalar import SineProductScalar as S, numerically_equal


@pytest.fixture(scope="module")
def g2():
    return parse_algebra("G2")


def test_finite_extension(g2):
    certificate = match(g2, make_orbit(g2, "A1"), 5, 2)
    assert certificate.ok_label == "Ã1"
    assert certificate.verdict == FINITE_EXTENSION
    assert certificate.multiplicity == 2
    assert certificate.c_W == certificate.c_natural == Fraction(3, 5)
    assert certificate.g_W == certificate.g_natural == Fraction(12, 5)
    assert [f.shifted for f in certificate.factors] == [Fraction(5, 2)]


def test_odd_orbit_collapsing_by_asymptotics(g2):
    certificate = match(g2, make_orbit(g2, "Ã1"), 7, 6)
    assert certificate.ok_label == "G2(a1)"
    assert certificate.level_kind == "coprincipal"
    assert certificate.verdict == COLLAPSING
    assert certificate.proof == PROOF_ASYMPTOTIC
    assert certificate.c_W == -6
    assert numerically_equal(certificate.A_W, 1 / (S.sqrt(3) * 3))


def test_even_orbit_collapses_to_trivial(g2):
    certificate = match(g2, make_orbit(g2, "G2(a1)"), 7, 6)
    assert certificate.verdict == COLLAPSING
    assert certificate.proof == PROOF_EVEN
    assert certificate.natural_type == "0"
    assert certificate.c_W == 0 and certificate.g_W == 0


def test_orbit_outside_closure_is_unsupported(g2):
    certificate = match(g2, make_orbit(g2, "G2"), 5, 2)
    assert certificate.verdict == UNSUPPORTED
    assert certificate.reason


def test_non_coprime_level_raises(g2):
    with pytest.raises(NotAdmissibleError):
        match(g2, make_orbit(g2, "A1"), 4, 2)


def test_sl9_rectangular_orbit():
    sl9 = parse_algebra("sl9")
    orbit = make_orbit(sl9, "3,3,3")
    assert 10 in solve_central_charge_in_p(sl9, orbit, 3)
    certificate = match(sl9, orbit, 10, 3)
    assert certificate.natural_type == "A2"
    assert [f.shifted for f in certificate.factors] == [4]
    assert certificate.c_W == certificate.c_natural == 2
    assert certificate.g_W == certificate.g_natural == 2


def test_center_fixes_level():
    sl7 = parse_algebra("sl7")
    orbit = make_orbit(sl7, "3,2,2")
    assert solve_central_charge_in_p(sl7, orbit, 3) == [7]
    certificate = match(sl7, orbit, 7, 3)
    assert certificate.k == Fraction(-14, 3)
    assert [f.shifted for f in certificate.factors] == [Fraction(2, 3)]
    assert certificate.c_W == certificate.c_natural == -6
    assert certificate.g_W == certificate.g_natural == 2
    assert certificate.verdict == COLLAPSING
    assert certificate.multiplicity == 1
    assert [(f.name, f.shifted, f.kind) for f in certificate.factors] == [("A1", Fraction(2, 3), "principal")]
    assert numerically_equal(certificate.A_W, certificate.A_natural)
    assert numerically_equal(certificate.A_natural, 1 / (S.sqrt(3) * 3))


def test_non_integer_ratio_is_unsupported(g2, monkeypatch):
    original = collapse.product_asymptotics

    def scaled(levels):
        datum = original(levels)
        return replace(datum, A=datum.A * S.rational(Fraction(4, 3)))

    monkeypatch.setattr(collapse, "product_asymptotics", scaled)
    certificate = match(g2, make_orbit(g2, "A1"), 5, 2)
    assert certificate.verdict == UNSUPPORTED
    assert certificate.multiplicity is None
    assert certificate.g_W == certificate.g_natural
    assert "A_W/A♮ ≈ 1.5 " in certificate.reason


def test_k0_nonzero():
    sl7 = parse_algebra("sl7")
    certificate = match(sl7, make_orbit(sl7, "3,2,2"), 8, 3)
    assert certificate.verdict == "k0_nonzero"


def test_certificate_round_trip(g2):
    certificate = match(g2, make_orbit(g2, "A1"), 5, 2)
    restored = CollapseCertificate.from_dict(json.loads(json.dumps(certificate.to_dict())))
    assert restored == certificate
    row = certificate.to_row()
    assert len(row) == len(TSV_HEADER)
    assert row[:4] == ["Ã1", "A1", "5/2", "5/2"]
    assert row[-1] == FINITE_EXTENSION


def test_sweep_g2(g2):
    certificates = sweep(g2, [2])
    assert {c.orbit for c in certificates} <= {"Ã1", "A1"}
    found = [c for c in certificates if c.orbit == "A1" and c.p == 5]
    assert found and found[0].verdict == FINITE_EXTENSION
    assert certificates == sorted(certificates, key=lambda c: (c.orbit, c.q, c.p))
    only = sweep(g2, [2], orbit_filter="~A1")
    assert all(c.orbit == "Ã1" for c in only)


def test_sweep_unsupported_denominator():
    e6 = parse_algebra("E6")
    certificates = sweep(e6, [8])
    assert len(certificates) == 20
    assert all(c.verdict == UNSUPPORTED and c.p is None for c in certificates)
    assert certificates[0].level_text == "?/8"


def test_knat_admissibility_g2(g2):
    report = verify_knat_admissibility(g2, [2, 3], p_span=12)
    assert report.points
    assert report.counterexamples == []
    assert report.excluded_by_slice == []
    assert not report.classical


def test_knat_report_counts_every_inadmissible_point():
    admissible = KnatPoint("A1", 7, 3, (), admissible=True, charge_root=True)
    off_root = KnatPoint("A1", 8, 3, (), admissible=False, charge_root=False)
    excluded = KnatPoint("A1", 13, 4, (), admissible=False, charge_root=False, excluded="slice")
    report = KnatReport("F4", points=[admissible, off_root, excluded], classical=False)
    assert report.counterexamples == [off_root]
    assert report.excluded_by_slice == [excluded]


def test_knat_recorded_slice_exclusion_f4_minimal():
    report = verify_knat_admissibility(parse_algebra("F4"), [4], p_span=4)
    minimal = [pt for pt in report.points if pt.orbit == "A1"]
    assert [pt.p for pt in minimal] == [13, 15]
    assert all(not pt.admissible and pt.excluded for pt in minimal)
    assert [f.shifted for f in minimal[0].factors] == [Fraction(3, 4)]
    assert all(pt.orbit != "A1" for pt in report.counterexamples)
