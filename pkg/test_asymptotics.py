"""
容许水平与渐近数据测试
"""

from fractions import Fraction
from itertools import count
from math import gcd

import pytest

from core.asymptotics import (
    COPRINCIPAL,
    NOT_ADMISSIBLE,
    PRINCIPAL,
    affine_asymptotics,
    affine_central_charge,
    classify_level,
    level_from_k,
    minimal_conformal_dimension,
    natural_central_charge,
    natural_levels,
    product_asymptotics,
    quantum_dimension,
    reduction_asymptotics,
    virasoro_minimal,
    w_central_charge,
)
from core.errors import CriticalLevelError, NotAdmissibleError
from core.liealg import build_root_system, parse_algebra
from core.orbits import list_orbits, make_orbit, natural_decomposition
from core.scalar import SineProductScalar as S, numerically_equal

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
G2 = build_root_system("G", 2)


@pytest.mark.parametrize("rs, p, q, kind", [
    (A1, 3, 2, PRINCIPAL),
    (A1, 1, 1, NOT_ADMISSIBLE),
    (G2, 7, 3, COPRINCIPAL),
    (G2, 5, 3, NOT_ADMISSIBLE),
    (G2, 4, 1, PRINCIPAL),
    (build_root_system("B", 2), 5, 4, COPRINCIPAL),
    (build_root_system("B", 2), 3, 4, NOT_ADMISSIBLE),
])
def test_classify_level(rs, p, q, kind):
    assert classify_level(rs, p, q).kind == kind


def test_classify_level_rejects():
    with pytest.raises(NotAdmissibleError):
        classify_level(A1, 4, 2)
    with pytest.raises(NotAdmissibleError):
        classify_level(A1, 0, 1)


def test_level_from_k():
    level = level_from_k(A1, Fraction(-1, 2))
    assert (level.p, level.q, level.kind) == (3, 2, PRINCIPAL)
    assert level.k == Fraction(-1, 2)
    assert level_from_k(A1, -3).kind == NOT_ADMISSIBLE
    with pytest.raises(CriticalLevelError):
        level_from_k(A1, -2)


def test_affine_central_charge():
    assert affine_central_charge(A1, 1) == 1
    assert affine_central_charge(A1, Fraction(-1, 2)) == -1
    assert affine_central_charge(A2, 1) == 2
    with pytest.raises(CriticalLevelError):
        affine_central_charge(G2, -4)


def test_affine_asymptotics_integrable():
    datum = affine_asymptotics(A1, classify_level(A1, 3, 1))
    assert datum.g == 1
    assert datum.w == 0
    assert numerically_equal(datum.A, S.sqrt(Fraction(1, 2)))
    datum = affine_asymptotics(A2, classify_level(A2, 4, 1))
    assert datum.g == 2
    assert numerically_equal(datum.A, 1 / S.sqrt(3))


def test_affine_asymptotics_fractional():
    datum = affine_asymptotics(A1, classify_level(A1, 3, 2))
    assert datum.g == 2
    assert numerically_equal(datum.A, S.rational(Fraction(1, 4)))
    with pytest.raises(NotAdmissibleError):
        affine_asymptotics(A1, classify_level(A1, 1, 2))


def test_quantum_dimension():
    level = classify_level(A1, 4, 1)
    assert numerically_equal(quantum_dimension(A1, level, (0,)), S.one())
    assert numerically_equal(quantum_dimension(A1, level, (1,)), S.sqrt(2))
    assert numerically_equal(quantum_dimension(A1, classify_level(A1, 3, 1), (1,)), S.one())
    assert numerically_equal(quantum_dimension(A1, classify_level(A1, 3, 14), (1,)), S.one())
    with pytest.raises(NotAdmissibleError):
        quantum_dimension(A1, level, (3,))
    with pytest.raises(NotAdmissibleError):
        quantum_dimension(A1, level, (0, 1))


def test_virasoro_minimal():
    lee_yang = virasoro_minimal(2, 5)
    assert lee_yang.c == Fraction(-22, 5)
    assert lee_yang.g == Fraction(2, 5)
    assert numerically_equal(lee_yang.A, S.sine(Fraction(1, 5)) * 2 / S.sqrt(5))
    trivial = virasoro_minimal(2, 3)
    assert trivial.c == 0 and trivial.g == 0
    assert numerically_equal(trivial.A, S.one())
    with pytest.raises(NotAdmissibleError):
        virasoro_minimal(2, 4)


def test_principal_w_algebra_of_sl2_is_virasoro():
    sl2 = parse_algebra("sl2")
    principal = make_orbit(sl2, "2")
    k = Fraction(5, 2) - 2
    assert w_central_charge(A1, principal, k) == virasoro_minimal(5, 2).c

    level = classify_level(A1, 3, 2)
    c = w_central_charge(A1, principal, level.k)
    h = minimal_conformal_dimension(A1, principal, level)
    assert c == 0
    assert c - 24 * h == reduction_asymptotics(A1, principal, level).g == 0


@pytest.mark.parametrize("algebra, label, p, q, vir", [
    ("so8", "5,3", 6, 5, 5),
    ("sp8", "6,2", 9, 10, 5),
    ("so10", "7,3", 8, 7, 7),
])
def test_classical_reductions_matching_virasoro(algebra, label, p, q, vir):
    spec = parse_algebra(algebra)
    rs = spec.root_system()
    orbit = make_orbit(spec, label)
    level = classify_level(rs, p, q)
    expected = virasoro_minimal(2, vir)
    assert w_central_charge(rs, orbit, level.k) == expected.c
    datum = reduction_asymptotics(rs, orbit, level)
    assert datum.g == expected.g
    assert numerically_equal(datum.A, expected.A)


def test_g2_reductions():
    g2 = parse_algebra("G2")
    level = classify_level(G2, 5, 2)
    orbit = make_orbit(g2, "A1")
    assert w_central_charge(G2, orbit, level.k) == Fraction(3, 5)
    datum = reduction_asymptotics(G2, orbit, level)
    assert datum.g == Fraction(12, 5)
    assert numerically_equal(datum.A, S.sine(Fraction(1, 5)) / S.sqrt(5))

    level = classify_level(G2, 7, 6)
    orbit = make_orbit(g2, "Ã1")
    assert w_central_charge(G2, orbit, level.k) == -6
    datum = reduction_asymptotics(G2, orbit, level)
    assert datum.g == 2
    assert numerically_equal(datum.A, 1 / (S.sqrt(3) * 3))


def test_reduction_outside_closure_vanishes():
    g2 = parse_algebra("G2")
    with pytest.raises(NotAdmissibleError):
        reduction_asymptotics(G2, make_orbit(g2, "G2(a1)"), classify_level(G2, 5, 2))


def test_zero_orbit_reduction_is_affine():
    a2 = parse_algebra("sl3")
    level = classify_level(A2, 5, 2)
    zero = make_orbit(a2, "1,1,1")
    reduced = reduction_asymptotics(A2, zero, level)
    affine = affine_asymptotics(A2, level)
    assert reduced.g == affine.g
    assert numerically_equal(reduced.A, affine.A)
    assert w_central_charge(A2, zero, level.k) == affine_central_charge(A2, level.k)


@pytest.mark.parametrize("algebra, q", [("sl4", 3), ("so8", 5), ("G2", 7), ("F4", 13)])
def test_effective_charge_on_even_orbits(algebra, q):
    spec = parse_algebra(algebra)
    rs = spec.root_system()
    p = next(p for p in count(rs.coxeter_number) if gcd(p, q) == 1)
    level = classify_level(rs, p, q)
    for orbit in list_orbits(spec):
        if not orbit.is_even:
            continue
        try:
            datum = reduction_asymptotics(rs, orbit, level)
        except NotAdmissibleError:
            continue
        c = w_central_charge(rs, orbit, level.k)
        assert c - 24 * minimal_conformal_dimension(rs, orbit, level) == datum.g, orbit.label_text


def test_natural_levels_and_product():
    g2 = parse_algebra("G2")
    decomposition = natural_decomposition(g2, make_orbit(g2, "A1"))
    factors = natural_levels(decomposition, Fraction(-3, 2))
    assert [f.k for f in factors] == [Fraction(1, 2)]
    assert factors[0].is_admissible
    assert natural_central_charge(factors) == Fraction(3, 5)
    datum = product_asymptotics(factors)
    assert datum.g == Fraction(12, 5)
    assert numerically_equal(datum.A, S.sine(Fraction(1, 5)) / (S.sqrt(5) * 2))

    empty = product_asymptotics([])
    assert empty.g == 0 and empty.A == S.one()

    critical = natural_levels(decomposition, Fraction(-7, 3))
    assert critical[0].is_critical
    with pytest.raises(NotAdmissibleError):
        product_asymptotics(critical)
