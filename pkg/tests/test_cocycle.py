"""Tests for elementary matrices, cocycle products and slope trajectories."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from cocycle import (
    ScaledMatrix,
    accelerated_product,
    classical_matrix,
    elementary_matrix,
    product_classical,
    product_twisted,
    slope_products,
    slope_trajectory,
)
from iet.aiet import make_iet, random_aiet, random_iet
from iet.exceptions import CocycleOverflowError, InsufficientPathError, TieError
from iet.permutation import random_irreducible_permutation
from iet.scalars import ArithmeticMode
from induction import RauzyPath, RauzyWalk, rotation_number

from .conftest import GOLDEN_TOP_EXPONENT

F = Fraction


def _walk(f, max_steps):
    """Edges and length/slope snapshots until ``max_steps`` or the first tie."""
    walk = RauzyWalk(f)
    edges, lengths, slopes = [], [tuple(walk.lengths)], [tuple(walk.slopes)]
    for _ in range(max_steps):
        try:
            edges.append(walk.step())
        except TieError:
            break
        lengths.append(tuple(walk.lengths))
        slopes.append(tuple(walk.slopes))
    return RauzyPath(f.perm, tuple(edges)), lengths, slopes


def test_elementary_matrices_of_the_rotation(rotation_perm):
    m0 = elementary_matrix(rotation_perm, 0, slopes=[2, 3])
    assert m0.to_array().tolist() == [[1, 0], [2, 1]]
    m1 = elementary_matrix(rotation_perm, 1, slopes=[2, 3])
    assert m1.to_array().tolist() == [[1, 1], [0, 2]]
    assert m1.determinant() == 2

    walk = RauzyWalk(make_iet(rotation_perm, [F(3, 10), F(7, 10)]))
    classical = classical_matrix(walk.step())
    assert classical.to_array().tolist() == [[1, 0], [1, 1]]
    assert classical.mode is ArithmeticMode.RATIONAL
    assert elementary_matrix(rotation_perm, 0, omega=[0, 0]).allclose(classical)


def test_huge_slopes_overflow(rotation_perm):
    with pytest.raises(CocycleOverflowError) as excinfo:
        elementary_matrix(rotation_perm, 0, omega=[800, -800])
    assert excinfo.value.code == "cocycle-overflow"


def test_twisted_product_recovers_earlier_lengths(rng):
    """l^m = A_{m,n} l^n exactly along random rational AIET paths."""
    for d in range(2, 6):
        p = random_irreducible_permutation(d, rng)
        f = random_aiet(p, rng)
        path, lengths, slopes = _walk(f, 25)
        n = len(path)
        if n < 2:
            continue
        trajectory = slope_products(path, f.slopes, n)
        for k in range(n + 1):
            assert trajectory.rho(k) == slopes[k]
        for m in (0, n // 2):
            A = product_twisted(path, m=m, n=n, slopes=f.slopes)
            assert A.mode is ArithmeticMode.RATIONAL
            recovered = A.to_array() @ np.array(lengths[n], dtype=object)
            assert tuple(recovered) == lengths[m]


def test_products_compose(rng):
    p = random_irreducible_permutation(4, rng)
    f = random_aiet(p, rng)
    path, _, _ = _walk(f, 20)
    n = len(path)
    k = n // 3
    whole = product_twisted(path, m=0, n=n, slopes=f.slopes)
    split = product_twisted(path, m=0, n=k, slopes=f.slopes) @ product_twisted(path, m=k, n=n, slopes=f.slopes)
    assert whole.allclose(split)
    assert (product_classical(path, 0, k) @ product_classical(path, k, n)).allclose(product_classical(path, 0, n))


def test_log_slopes_follow_the_transposed_product(symmetric4, rng):
    path = rotation_number(random_iet(symmetric4, rng), 12)
    omega0 = [F(1, 3), F(-1, 5), F(2, 7), F(-1, 11)]
    trajectory = slope_trajectory(path, omega0)
    for n in range(len(path) + 1):
        A = product_classical(path, 0, n).to_array()
        expected = A.T @ np.array(omega0, dtype=object)
        assert tuple(expected) == trajectory.values[n]


def test_accelerated_product_over_a_long_block(rotation_perm):
    f = make_iet(rotation_perm, [F(93, 100), F(7, 100)])
    path = rotation_number(f, 14)
    assert path.zorich_times() == [0, 13]
    B = accelerated_product(path, m=0, n=1)
    assert B.to_array().tolist() == [[1, 13], [0, 1]]
    with pytest.raises(InsufficientPathError):
        accelerated_product(path, m=0, n=2)
    with pytest.raises(InsufficientPathError):
        product_twisted(path, m=0, n=15)


def test_multiprecision_product_is_rescaled(golden_iet, golden_omega):
    path = rotation_number(golden_iet, 200)
    A = product_twisted(path, golden_omega)
    assert A.mode is ArithmeticMode.MULTIPRECISION
    assert A.logscale > 0
    largest = max(float(x) for x in A.entries.flat)
    assert 1.0 <= largest < 2.0
    assert A.logscale + math.log(largest) == pytest.approx(200 * GOLDEN_TOP_EXPONENT, rel=0.05)


def test_scaled_matrix_float_rescaling(rotation_perm):
    alphabet = rotation_perm.alphabet
    M = ScaledMatrix.create(alphabet, [[2.0 ** 600, 1.0], [3.0, 2.0 ** 601]], ArithmeticMode.FLOAT)
    assert M.entries.max() == pytest.approx(1.0)
    assert M.logscale == pytest.approx(601 * math.log(2))
    assert M.is_positive()
    assert ScaledMatrix.from_dict(M.to_dict()).allclose(M)

    identity = ScaledMatrix.identity(alphabet)
    assert not identity.is_positive()
    assert identity.is_nonnegative()
    assert not identity.is_singular()
    singular = ScaledMatrix.create(alphabet, [[1, 1], [1, 1]], ArithmeticMode.RATIONAL)
    assert singular.is_singular()
    assert singular.entry("A", "B") == 1


def test_cocycle_identities_on_many_random_aiets(rng):
    """Lengths and log-slopes obey the product relations exactly on 200 random AIETs."""
    checked = 0
    for case in range(200):
        d = 2 + case % 4
        f = random_aiet(random_irreducible_permutation(d, rng), rng)
        path, lengths, _ = _walk(f, int(rng.integers(1, 26)))
        n = len(path)
        if n == 0:
            continue
        m = int(rng.integers(0, n))
        A = product_twisted(path, m=m, n=n, slopes=f.slopes)
        assert tuple(A.to_array() @ np.array(lengths[n], dtype=object)) == lengths[m]

        omega0 = [F(int(k), 7) for k in rng.integers(-5, 6, size=d)]
        trajectory = slope_trajectory(path, omega0)
        B = product_classical(path, m, n).to_array()
        assert tuple(B.T @ np.array(trajectory.values[m], dtype=object)) == trajectory.values[n]
        checked += 1
    assert checked >= 150
