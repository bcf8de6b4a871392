"""Tests for AIET construction, evaluation and the Keane check."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from iet.aiet import (
    domain_singularities,
    evaluate,
    evaluate_inverse,
    in_which_interval,
    make_aiet,
    make_iet,
    normalize,
    random_aiet,
    random_iet,
    random_lengths,
    range_singularities,
    translations,
)
from iet.exceptions import (
    ClosureViolationError,
    NonPositiveLengthError,
    OutOfDomainError,
    PreconditionError,
    ReduciblePermutationError,
)
from iet.keane import KeaneStatus, _wrap, check_keane, replay_witness
from iet.permutation import Permutation, random_irreducible_permutation
from iet.scalars import ArithmeticMode, format_scalar, infer_mode, parse_scalar

F = Fraction


@pytest.fixture
def third_rotation(rotation_perm):
    return make_iet(rotation_perm, [F(1, 3), F(2, 3)])


def test_rotation_evaluation(third_rotation):
    f = third_rotation
    assert f.mode is ArithmeticMode.RATIONAL
    assert f.is_iet and f.is_normalized
    assert evaluate(f, F(0)) == F(2, 3)
    assert evaluate(f, F(1, 4)) == F(11, 12)
    assert evaluate(f, F(1, 2)) == F(1, 6)
    assert evaluate_inverse(f, F(1, 6)) == F(1, 2)
    assert translations(f) == (F(2, 3), F(-1, 3))
    assert in_which_interval(f, F(1, 3)) == "B"


def test_evaluate_rejects_points_outside_domain(third_rotation):
    with pytest.raises(OutOfDomainError):
        evaluate(third_rotation, F(1))
    with pytest.raises(OutOfDomainError):
        evaluate(third_rotation, F(-1, 10))


def test_affine_map_evaluation(exact_aiet):
    f = exact_aiet
    assert not f.is_iet
    assert f.closure_residual == 0
    assert evaluate(f, F(1, 4)) == F(7, 8)
    assert evaluate(f, F(3, 4)) == F(3, 8)
    assert evaluate_inverse(f, F(3, 8)) == F(3, 4)
    with pytest.raises(PreconditionError):
        translations(f)


def test_singularities_of_symmetric_map(symmetric4):
    f = make_iet(symmetric4, [F(1, 10), F(2, 10), F(3, 10), F(4, 10)])
    assert domain_singularities(f) == [("B", F(1, 10)), ("C", F(3, 10)), ("D", F(3, 5))]
    assert range_singularities(f) == [("C", F(2, 5)), ("B", F(7, 10)), ("A", F(9, 10))]


def test_lengths_may_be_keyed_by_symbol(rotation_perm):
    f = make_iet(rotation_perm, {"B": F(3, 4), "A": F(1, 4)})
    assert f.lengths == (F(1, 4), F(3, 4))
    assert f.length("B") == F(3, 4)


def test_construction_errors(rotation_perm):
    with pytest.raises(NonPositiveLengthError):
        make_iet(rotation_perm, [F(0), F(1)])
    with pytest.raises(PreconditionError):
        make_iet(rotation_perm, [F(1, 3), F(1, 3), F(1, 3)])
    with pytest.raises(ClosureViolationError) as excinfo:
        make_aiet(rotation_perm, [F(1, 2), F(1, 2)], slopes=[F(1), F(2)])
    assert excinfo.value.code == "closure-violation"
    with pytest.raises(ReduciblePermutationError):
        make_iet(Permutation.from_rows("A B C", "A C B"), [F(1, 3)] * 3)
    with pytest.raises(PreconditionError):
        make_aiet(rotation_perm, [F(1, 2), F(1, 2)], logslopes=[1, -1], mode=ArithmeticMode.RATIONAL)


def test_normalize_rescales_lengths_only(rotation_perm):
    f = normalize(make_iet(rotation_perm, [F(1), F(3)]))
    assert f.lengths == (F(1, 4), F(3, 4))
    assert f.slopes == (F(1), F(1))


def test_float_slopes_close_within_tolerance(rotation_perm):
    import math

    # rho_A l_A + rho_B l_B = 1 with l = (1/2, 1/2), rho_A = 1/2
    f = make_aiet(rotation_perm, [0.5, 0.5], logslopes=[math.log(0.5), math.log(1.5)])
    assert f.mode is ArithmeticMode.FLOAT
    assert f.closure_residual < 1e-12
    assert f.logslopes[0] == pytest.approx(math.log(0.5))


def test_random_samplers(rng):
    for d in range(2, 6):
        p = random_irreducible_permutation(d, rng)
        f = random_iet(p, rng)
        assert sum(f.lengths) == 1
        g = random_aiet(p, rng)
        assert g.closure_residual == 0
        assert all(rho > 0 for rho in g.slopes)
    floats = random_lengths(4, rng, ArithmeticMode.FLOAT)
    assert sum(floats) == pytest.approx(1.0)
    assert all(v > 0 for v in floats)


def test_scalar_parsing():
    assert parse_scalar("0.4", ArithmeticMode.RATIONAL) == F(2, 5)
    assert parse_scalar("3/8", ArithmeticMode.FLOAT) == 0.375
    assert format_scalar(F(3, 8)) == "3/8"
    assert infer_mode([F(1), 0.5]) is ArithmeticMode.FLOAT
    assert infer_mode([F(1), mpmath.mpf(1)]) is ArithmeticMode.MULTIPRECISION
    with pytest.raises(PreconditionError):
        parse_scalar("x/2", ArithmeticMode.RATIONAL)


def test_keane_fails_for_rational_rotation(rotation_perm):
    f = make_iet(rotation_perm, [F(1, 2), F(1, 2)])
    verdict = check_keane(f, 10)
    assert verdict.status is KeaneStatus.FAILS
    assert not verdict.passes
    witness = verdict.witness
    assert (witness.symbol, witness.iterate, witness.hit_symbol, witness.point) == ("B", 2, "B", F(1, 2))
    assert replay_witness(f, verdict)
    assert verdict.to_dict()["witness"]["point"] == "1/2"


def test_keane_passes_for_golden_rotation(golden_iet):
    verdict = check_keane(golden_iet, 1000)
    assert verdict.passes
    assert verdict.witness is None
    assert not replay_witness(golden_iet, verdict)


def test_keane_passes_for_generic_rational_lengths(symmetric4, rng):
    f = random_iet(symmetric4, rng)
    assert check_keane(f, 50).passes


def test_keane_orbits_fold_drift_from_both_ends():
    assert _wrap(-1e-17, 1.0) == pytest.approx(1.0)
    assert _wrap(1.0, 1.0) == 0.0
    assert _wrap(0.25, 1.0) == 0.25


def test_keane_passes_for_float_golden_rotation(golden_float_iet):
    assert check_keane(golden_float_iet, 5000).passes


def test_keane_depth_must_be_positive(third_rotation):
    with pytest.raises(PreconditionError):
        check_keane(third_rotation, 0)
