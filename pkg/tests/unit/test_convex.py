"""
Module: tests.unit.test_convex
Description: Unit tests for the exact simplex, hull position and Wolfe's
             minimum-norm point against the face-enumeration oracle

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework

Usage:
    pytest tests/unit/test_convex.py -v

Notes:
    - Property checks use a seeded random.Random so runs are reproducible
"""

import random
from fractions import Fraction

import pytest

from gitstrata.convex import (
    HullPosition,
    LPStatus,
    maximize_lp,
    min_norm_by_enumeration,
    min_norm_point,
    origin_position,
    solve_min_norm,
    witness_weights,
)
from gitstrata.errors import InputError
from gitstrata.rational import InnerProduct, QVector, parse_matrix


def random_point(rng: random.Random, dim: int) -> QVector:
    return QVector(
        tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(dim))
    )


def random_form(rng: random.Random, dim: int) -> InnerProduct:
    """A^T A + I with small integer A: symmetric positive-definite"""
    a = [[Fraction(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(dim)]
    matrix = tuple(
        tuple(
            sum((a[k][i] * a[k][j] for k in range(dim)), Fraction(0)) + (1 if i == j else 0)
            for j in range(dim)
        )
        for i in range(dim)
    )
    return InnerProduct(matrix)


class TestMaximizeLP:
    """Test the two-phase Bland simplex"""

    def test_optimal_vertex(self):
        """Test a bounded problem with a fractional optimum"""
        result = maximize_lp(
            [Fraction(1), Fraction(1), Fraction(0), Fraction(0)],
            [[1, 2, 1, 0], [3, 1, 0, 1]],
            [4, 6],
        )
        assert result.status is LPStatus.OPTIMAL
        assert result.value == Fraction(14, 5)
        assert result.x[:2] == (Fraction(8, 5), Fraction(6, 5))

    def test_infeasible(self):
        """Test x = -1 with x >= 0"""
        assert maximize_lp([Fraction(1)], [[1]], [-1]).status is LPStatus.INFEASIBLE

    def test_unbounded(self):
        """Test max x1 subject to x1 = x2"""
        result = maximize_lp([Fraction(1), Fraction(0)], [[1, -1]], [0])
        assert result.status is LPStatus.UNBOUNDED

    def test_row_length_checked(self):
        """Test that ragged constraint rows are input errors"""
        with pytest.raises(InputError):
            maximize_lp([Fraction(1), Fraction(1)], [[1]], [1])


class TestOriginPosition:
    """Test the position of 0 relative to a convex hull"""

    def test_interior_on_line(self):
        """Test {1, -1}: 0 is the midpoint of a full-dimensional hull"""
        assert origin_position([QVector.of(1), QVector.of(-1)]) is HullPosition.INTERIOR

    def test_outside(self):
        """Test a segment missing the origin"""
        points = [QVector.of(1, 0), QVector.of(0, 1)]
        assert origin_position(points) is HullPosition.OUTSIDE

    def test_boundary_when_not_full_dimensional(self):
        """Test that a segment through 0 in the plane is boundary"""
        points = [QVector.of(1, 0), QVector.of(-1, 0)]
        assert origin_position(points) is HullPosition.BOUNDARY
        assert origin_position(points, relative=True) is HullPosition.INTERIOR

    def test_vertex_is_boundary(self):
        """Test that 0 as a vertex is boundary"""
        points = [QVector.of(0), QVector.of(3)]
        assert origin_position(points) is HullPosition.BOUNDARY

    def test_triangle_interior(self):
        """Test a triangle around the origin"""
        points = [QVector.of(1, 0), QVector.of(0, 1), QVector.of(-1, -1)]
        assert origin_position(points) is HullPosition.INTERIOR

    def test_dimension_mismatch(self):
        """Test that mixed dimensions are rejected"""
        with pytest.raises(InputError, match="dimension mismatch"):
            origin_position([QVector.of(1), QVector.of(1, 2)])

    def test_empty(self):
        """Test that an empty list is rejected"""
        with pytest.raises(InputError):
            origin_position([])


class TestMinNormPoint:
    """Test Wolfe's minimum-norm point"""

    def test_single_point(self):
        """Test {2}"""
        assert min_norm_point([QVector.of(2)], InnerProduct.standard(1)) == (
            QVector.of(2),
            Fraction(4),
        )

    def test_segment_midpoint(self):
        """Test the symmetric segment between the unit vectors"""
        point, norm_sq = min_norm_point(
            [QVector.of(1, 0), QVector.of(0, 1)], InnerProduct.standard(2)
        )
        assert point == QVector.of("1/2", "1/2")
        assert norm_sq == Fraction(1, 2)

    def test_skew_segment(self):
        """Test {(1,0), (-1,-1)}"""
        point, norm_sq = min_norm_point(
            [QVector.of(1, 0), QVector.of(-1, -1)], InnerProduct.standard(2)
        )
        assert point == QVector.of("1/5", "-2/5")
        assert norm_sq == Fraction(1, 5)

    def test_origin_inside(self):
        """Test that a hull containing 0 gives 0"""
        point, norm_sq = min_norm_point(
            [QVector.of(2), QVector.of(-1)], InnerProduct.standard(1)
        )
        assert point.is_zero()
        assert norm_sq == 0

    def test_non_standard_form(self):
        """Test that the answer depends on the form"""
        ip = InnerProduct(parse_matrix([[1, 0], [0, 4]]))
        point, norm_sq = min_norm_point([QVector.of(1, 0), QVector.of(0, 1)], ip)
        assert point == QVector.of("4/5", "1/5")
        assert norm_sq == Fraction(4, 5)

    def test_witness_reproduces_point(self):
        """Test that the witness is a convex combination equal to the point"""
        points = [QVector.of(3, 1), QVector.of(1, 3), QVector.of(4, 4)]
        result = solve_min_norm(points, InnerProduct.standard(2))
        weights = witness_weights(result)
        assert sum(weights.values()) == 1
        assert all(w > 0 for w in weights.values())
        combined = QVector.zero(2)
        for p, w in weights.items():
            combined = combined + p.scale(w)
        assert combined == result.point == QVector.of(2, 2)

    def test_order_independent(self):
        """Test that shuffling and duplicating the input changes nothing"""
        rng = random.Random(7)
        points = [random_point(rng, 3) for _ in range(6)]
        ip = InnerProduct.standard(3)
        expected = min_norm_point(points, ip)
        shuffled = points + points[:2]
        rng.shuffle(shuffled)
        assert min_norm_point(shuffled, ip) == expected

    def test_form_dimension_checked(self):
        """Test that a form of the wrong size is rejected"""
        with pytest.raises(InputError):
            min_norm_point([QVector.of(1, 0)], InnerProduct.standard(1))

    def test_matches_enumeration_oracle(self):
        """Test Wolfe against exhaustive face enumeration on random inputs"""
        rng = random.Random(20261019)
        for _ in range(150):
            dim = rng.randint(1, 3)
            points = [random_point(rng, dim) for _ in range(rng.randint(1, 6))]
            ip = random_form(rng, dim)
            assert min_norm_point(points, ip) == min_norm_by_enumeration(points, ip)
