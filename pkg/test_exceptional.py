"""
例外型标号与静态表测试
"""

import pytest

from core.errors import UnknownOrbitError, UnsupportedDenominatorError
from core.exceptional import (
    candidate_diagrams,
    centralizer_row,
    centralizer_table,
    distinguished_diagrams,
    exceptional_labels,
    exceptional_orbit_label_for_level,
    exceptional_weighted_dynkin,
    normalize_label,
    parse_label,
    parse_natural_type,
)
from core.liealg import parse_algebra
from core.orbits import make_orbit


def test_normalize_label():
    assert normalize_label(" ~A1 ") == "Ã1"
    assert normalize_label("A2 + ~A1") == "A2+Ã1"
    assert normalize_label("(A5)′′") == "(A5)''"


def test_parse_label():
    parsed = parse_label("2A2+A1")
    assert [c.name for c in parsed.components] == ["A2", "A2", "A1"]
    assert parse_label("Ã2+A1").components[0].short
    assert parse_label("D4(a1)").components[0].variant == "a1"
    primed = parse_label("(A3+A1)''")
    assert primed.primes == 2
    assert [c.name for c in primed.components] == ["A3", "A1"]
    assert parse_label("0").components == ()
    with pytest.raises(UnknownOrbitError):
        parse_label("X5")


def test_parse_natural_type():
    assert parse_natural_type("C×A2") == (1, (("A", 2),))
    assert parse_natural_type("C^2") == (2, ())
    assert parse_natural_type("A1×A1") == (0, (("A", 1), ("A", 1)))
    assert parse_natural_type("0") == (0, ())
    with pytest.raises(UnknownOrbitError):
        parse_natural_type("Q3")


def test_g2_distinguished_diagrams():
    diagrams = distinguished_diagrams("G2")
    assert set(diagrams) == {"G2", "G2(a1)"}
    assert diagrams["G2"] == (2, 2)
    assert all(w % 2 == 0 for w in diagrams["G2(a1)"])
    assert candidate_diagrams("G2", "0") == ((0, 0),)


@pytest.mark.parametrize("type_name", ["G2", "F4"])
def test_diagram_parity_matches_table(type_name):
    for label in exceptional_labels(type_name):
        weights = exceptional_weighted_dynkin(type_name, label)
        even = all(w % 2 == 0 for w in weights)
        assert even == centralizer_row(type_name, label).even, label


def test_f4_orbit_dimensions():
    f4 = parse_algebra("F4")
    expected = {
        "F4": 48, "F4(a1)": 46, "F4(a2)": 44, "B3": 42, "C3": 42, "F4(a3)": 40,
        "C3(a1)": 38, "Ã2+A1": 36, "B2": 36, "A2+Ã1": 34, "Ã2": 30, "A2": 30,
        "A1+Ã1": 28, "Ã1": 22, "A1": 16, "0": 0,
    }
    for label, dim in expected.items():
        assert make_orbit(f4, label).dim_orbit == dim, label


def test_centralizer_rows():
    row = centralizer_row("G2", "~A1")
    assert row.factors == (("A", 1),)
    assert row.forms == ("k+3/2",)
    assert row.dim_natural == 3
    b2 = centralizer_row("F4", "B2")
    assert b2.factor_forms == ("k+11/2", "k+11/2")
    assert b2.center_forms == ()
    assert len(centralizer_table("E6")) == 21
    with pytest.raises(UnknownOrbitError):
        centralizer_row("G2", "D4")


def test_levels_table():
    assert exceptional_orbit_label_for_level("F4", 8, True) == "B3"
    assert exceptional_orbit_label_for_level("E7", 11, False) == "E7(a3)"
    assert exceptional_orbit_label_for_level("E8", 31, False) == "E8"
    assert exceptional_orbit_label_for_level("G2", 7, False) == "G2"
    assert exceptional_orbit_label_for_level("G2", 1, False) == "0"
    with pytest.raises(UnsupportedDenominatorError):
        exceptional_orbit_label_for_level("E8", 16, False)
    with pytest.raises(UnsupportedDenominatorError):
        exceptional_orbit_label_for_level("E8", 97, False)
    with pytest.raises(UnsupportedDenominatorError):
        exceptional_orbit_label_for_level("G2", 99, True)
