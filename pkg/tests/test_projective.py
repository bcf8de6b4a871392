"""Tests for the Hilbert metric and Birkhoff contraction."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from cocycle import product_classical, product_twisted
from cocycle.scaled_matrix import ScaledMatrix
from induction import rotation_number
from iet.exceptions import NonPositiveCoordinateError, PreconditionError, SingularMatrixError
from iet.permutation import Alphabet
from iet.scalars import ArithmeticMode
from projective.hilbert import (
    ProjectiveDiagnostics,
    contraction_coefficient,
    hilbert_distance,
    image_diameter,
    project,
    sampled_contraction_ratio,
    uniform_contraction_bound,
)

ABCD = Alphabet(("A", "B", "C", "D"))


def _rational(rows):
    return ScaledMatrix.create(Alphabet(tuple("ABCD"[:len(rows)])), rows, ArithmeticMode.RATIONAL)


def _random_positive(rng, low=0.1, high=5.0):
    return ScaledMatrix.create(ABCD, rng.uniform(low, high, size=(4, 4)), ArithmeticMode.FLOAT)


def test_project_normalizes_to_unit_mass():
    assert project([1, 3]).coords == (Fraction(1, 4), Fraction(3, 4))
    with pytest.raises(NonPositiveCoordinateError):
        project([1, 0])


def test_two_by_two_reference_values():
    M = _rational([[2, 1], [1, 2]])
    diameter, witness = image_diameter(M)
    assert diameter == pytest.approx(math.log(4))
    assert witness == ("A", "B")
    assert contraction_coefficient(M) == pytest.approx(1 / 3)

    triangular = _rational([[1, 0], [1, 1]])
    assert image_diameter(triangular) == (math.inf, None)
    assert contraction_coefficient(triangular) == 1.0

    with pytest.raises(SingularMatrixError):
        contraction_coefficient(_rational([[1, 1], [1, 1]]))

    diagnostics = ProjectiveDiagnostics.of(M)
    assert diagnostics.coefficient == pytest.approx(1 / 3)
    assert ProjectiveDiagnostics.of(triangular).to_dict()['diameter'] is None


def test_metric_axioms(rng):
    for _ in range(1000):
        u, v, w = (rng.uniform(0.01, 10.0, size=4) for _ in range(3))
        assert hilbert_distance(u, u) == pytest.approx(0.0, abs=1e-12)
        assert hilbert_distance(u, v) == pytest.approx(hilbert_distance(v, u))
        assert hilbert_distance(u, 7.5 * v) == pytest.approx(hilbert_distance(u, v))
        assert hilbert_distance(u, w) <= hilbert_distance(u, v) + hilbert_distance(v, w) + 1e-10


def test_distance_rejects_boundary_vectors():
    with pytest.raises(NonPositiveCoordinateError):
        hilbert_distance([1.0, 0.0], [1.0, 1.0])
    with pytest.raises(PreconditionError):
        hilbert_distance([1.0, 2.0], [1.0, 2.0, 3.0])


def test_close_rational_vectors_keep_precision():
    u = [Fraction(1), Fraction(1)]
    v = [Fraction(1), Fraction(10 ** 20 + 1, 10 ** 20)]
    assert hilbert_distance(u, v) == pytest.approx(1e-20, rel=1e-6)


def test_positive_matrices_contract(rng):
    for _ in range(1000):
        M = _random_positive(rng)
        kappa = contraction_coefficient(M)
        assert 0.0 <= kappa < 1.0
        matrix = M.to_float_array()
        u, v = rng.uniform(0.01, 10.0, size=4), rng.uniform(0.01, 10.0, size=4)
        assert hilbert_distance(matrix @ u, matrix @ v) <= kappa * hilbert_distance(u, v) + 1e-10
        assert sampled_contraction_ratio(M, 10, rng) <= kappa + 1e-10


def test_contraction_is_submultiplicative(rng):
    for _ in range(1000):
        M, N = _random_positive(rng), _random_positive(rng)
        assert contraction_coefficient(M @ N) <= contraction_coefficient(M) * contraction_coefficient(N) + 1e-10


def test_uniform_bound():
    assert uniform_contraction_bound(1) == 0.0
    assert uniform_contraction_bound(3) == pytest.approx(0.8)
    with pytest.raises(PreconditionError):
        uniform_contraction_bound(0.5)


def test_uniform_bound_dominates_bounded_matrices(rng):
    gamma = 3.0
    bound = uniform_contraction_bound(gamma)
    for _ in range(30):
        M = _random_positive(rng, low=1 / gamma + 1e-9, high=gamma - 1e-9)
        assert contraction_coefficient(M) <= bound


def test_scale_does_not_change_the_diameter(rng):
    M = _random_positive(rng)
    scaled = ScaledMatrix.create(ABCD, M.to_float_array() * np.exp(40.0), ArithmeticMode.FLOAT)
    assert image_diameter(scaled)[0] == pytest.approx(image_diameter(M)[0])


def test_long_twisted_products_are_not_singular(golden_iet, golden_omega):
    path = rotation_number(golden_iet, 200)
    twisted = product_twisted(path, golden_omega)
    assert twisted.mode is ArithmeticMode.MULTIPRECISION
    assert not twisted.is_singular()
    assert 0.0 <= contraction_coefficient(twisted) < 1e-6


@pytest.mark.parametrize("steps", [45, 200])
def test_float_copies_of_classical_products_are_not_singular(golden_iet, steps):
    exact = product_classical(rotation_number(golden_iet, steps))
    assert abs(exact.determinant()) == 1
    as_float = ScaledMatrix.create(exact.alphabet, exact.entries.astype(float), ArithmeticMode.FLOAT)
    assert not as_float.invertible
    assert not as_float.is_singular()
    assert 0.0 <= contraction_coefficient(as_float) < 1e-6


def test_structural_zeros_make_float_matrices_singular():
    zero_column = ScaledMatrix.create(Alphabet(("A", "B")), [[1.0, 0.0], [2.0, 0.0]], ArithmeticMode.FLOAT)
    assert zero_column.is_singular()
    with pytest.raises(SingularMatrixError):
        contraction_coefficient(zero_column)
