"""
金字塔与好分次测试
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import InvalidPartitionError
from core.orbits import Partition, classical_centralizer_dim, partitions
from core.pyramids import (
    alignment_independence_check,
    build_epsilon_dynkin_pyramid,
    build_pyramid,
    alignment_shape_covered,
    degree_multiset,
    epsilon_coordinates,
    gamma_dependent_factor,
    grading_dims,
    render_ascii,
)
from core.scalar import SineProductScalar, numerically_equal


def test_principal_sl3_is_even():
    multiset = degree_multiset(build_pyramid((3,)))
    assert multiset.is_even
    assert multiset.zero_count == 0
    assert multiset.dim_gf == 2


def test_minimal_sl3_grading():
    pyramid = build_pyramid((2, 1))
    assert sorted(epsilon_coordinates(pyramid)) == [Fraction(-1, 2), 0, Fraction(1, 2)]
    zero, half, dim_g0, dim_gf = grading_dims(pyramid)
    assert (zero, half, dim_g0, dim_gf) == (0, 2, 2, 4)
    assert not degree_multiset(pyramid).is_even


def test_left_alignment_changes_grading():
    multiset = degree_multiset(build_pyramid((2, 1), "left"))
    assert multiset.zero_count == 1
    assert multiset.half_count == 0


def test_invalid_pyramids():
    with pytest.raises(ValueError):
        build_pyramid((2, 1), "center")
    with pytest.raises(InvalidPartitionError):
        build_pyramid((2, 0))
    with pytest.raises(InvalidPartitionError):
        build_epsilon_dynkin_pyramid((3, 1), -1)


def test_symplectic_pyramid():
    pyramid = build_epsilon_dynkin_pyramid((2, 2), -1)
    assert pyramid.algebra_parity == "symplectic"
    assert sorted(b.label for b in pyramid.boxes) == [-2, -1, 1, 2]
    multiset = degree_multiset(pyramid)
    assert multiset.zero_count == 1
    assert multiset.dim_gf == classical_centralizer_dim("sp", Partition((2, 2)))


def test_odd_orthogonal_pyramid_has_zeroth_row():
    pyramid = build_epsilon_dynkin_pyramid((3, 1, 1), 1)
    assert pyramid.n == 5
    assert any(b.label == 0 and b.row == 0 for b in pyramid.boxes)
    assert sorted(epsilon_coordinates(pyramid)) == [0, 1]
    multiset = degree_multiset(pyramid)
    assert multiset.dim_gf == classical_centralizer_dim("so", Partition((3, 1, 1))) == 4


def test_render_ascii():
    text = render_ascii(build_pyramid((2, 1)))
    assert text.splitlines() == ["   2", " 3   1"]
    assert render_ascii(build_pyramid(())) == ""


def test_gamma_factor_alignment_independence():
    assert alignment_shape_covered((3, 3, 1), 3)
    assert alignment_shape_covered((3, 2, 2), 3)
    assert not alignment_shape_covered((3, 2, 1, 1), 3)
    assert not alignment_shape_covered((4, 1), 3)
    assert alignment_independence_check((2, 1), 2)
    assert alignment_independence_check((4, 1), 3) is None
    value = gamma_dependent_factor(degree_multiset(build_pyramid((2, 1), "left")), 2)
    assert numerically_equal(value, SineProductScalar.rational(2))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=12).flatmap(lambda n: st.sampled_from(list(partitions(n)))))
def test_dynkin_pyramid_centralizer_dimension(partition):
    multiset = degree_multiset(build_pyramid(partition.parts))
    assert multiset.dim_gf == classical_centralizer_dim("sl", partition)
