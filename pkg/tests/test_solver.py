"""Tests for the nested-cone solver, cone diagnostics and semi-conjugacy checks."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cocycle import product_twisted
from iet.aiet import make_iet, random_iet
from iet.exceptions import MaxStepsExceededError, OrthogonalityViolationError, PreconditionError
from iet.permutation import random_irreducible_permutation
from iet.scalars import ArithmeticMode, to_mode, to_vector
from induction import rotation_number
from oseledets import bcc_monitor, estimate_ecs
from projective import contraction_coefficient, uniform_contraction_bound
from solver import (
    cone_diameter_trace,
    cone_membership,
    contraction_profile,
    solve_unique_aiet,
    verify_semiconjugacy,
)

from .conftest import PHI

F = Fraction


def test_golden_multiprecision_solve(golden_iet, golden_omega):
    report = solve_unique_aiet(golden_iet, golden_omega, tolerance=1e-8, max_steps=200, verify_depth=100)
    assert report.mode is ArithmeticMode.MULTIPRECISION
    assert report.final_diameter < 1e-8
    assert report.steps >= 105
    assert report.converged_at is not None and report.converged_at <= report.steps
    assert report.closure_residual <= 1e-7
    assert report.semiconjugacy_verified
    assert sum(float(x) for x in report.lengths) == pytest.approx(1.0)
    assert all(x > 0 for x in report.lengths)
    assert report.diagnostics['first_positive_step'] == 2
    assert report.diagnostics['D'] == report.diameter_trace[2]
    assert 0 < report.diagnostics['kappa'] < 1
    assert report.diagnostics['kappa'] == pytest.approx(uniform_contraction_bound(report.diagnostics['Gamma']))
    assert report.diagnostics['windows'] >= 1

    data = report.to_dict()
    for key in ('lengths', 'steps', 'final_diameter', 'closure_residual', 'verified_depth',
                'diameter_trace', 'converged_at', 'omega', 'semiconjugacy_verified', 'mode'):
        assert key in data


def test_solution_is_stable_under_a_tighter_tolerance(golden_iet, golden_omega):
    loose = solve_unique_aiet(golden_iet, golden_omega, tolerance=1e-8, max_steps=200)
    tight = solve_unique_aiet(golden_iet, golden_omega, tolerance=1e-10, max_steps=200)
    for a, b in zip(loose.lengths, tight.lengths):
        assert float(a) == pytest.approx(float(b), abs=1e-7)


def test_golden_float_solve(golden_float_iet):
    omega = [0.1 * (PHI - 1), -0.1 * (2 - PHI)]
    report = solve_unique_aiet(golden_float_iet, omega, tolerance=1e-8, max_steps=200, verify_depth=20)
    assert report.mode is ArithmeticMode.FLOAT
    assert report.final_diameter < 1e-8
    assert report.semiconjugacy_verified
    assert report.steps >= 25


def test_zero_omega_recovers_the_lengths(rng):
    for d in (2, 3, 4):
        f = random_iet(random_irreducible_permutation(d, rng), rng)
        report = solve_unique_aiet(f, None, tolerance=1e-8)
        assert report.mode is ArithmeticMode.RATIONAL
        assert report.closure_residual == 0
        assert report.semiconjugacy_verified
        for found, expected in zip(report.lengths, f.lengths):
            assert float(found) == pytest.approx(float(expected), abs=1e-8)


def test_omega_must_be_orthogonal(golden_float_iet, rotation_perm):
    with pytest.raises(OrthogonalityViolationError) as excinfo:
        solve_unique_aiet(golden_float_iet, [1.0, 1.0])
    assert excinfo.value.code == "orthogonality-violation"

    exact = make_iet(rotation_perm, [F(1, 3), F(2, 3)])
    with pytest.raises(OrthogonalityViolationError):
        solve_unique_aiet(exact, [F(1, 10), F(1, 10)])


def test_nearly_orthogonal_omega_is_projected(golden_float_iet):
    omega = [0.1 * (PHI - 1) + 1e-13, -0.1 * (2 - PHI) + 1e-13]
    report = solve_unique_aiet(golden_float_iet, omega, tolerance=1e-8, max_steps=200, verify_depth=20)
    assert 0 < report.projection_distance < 1e-11
    inner = sum(w * l for w, l in zip(report.omega, golden_float_iet.lengths))
    assert abs(inner) < 1e-15


def test_non_convergence_carries_the_trace(golden_iet, golden_omega):
    with pytest.raises(MaxStepsExceededError) as excinfo:
        solve_unique_aiet(golden_iet, golden_omega, max_steps=10)
    error = excinfo.value
    assert error.code == "max-steps-exceeded"
    assert error.exit_code == 4
    assert len(error.trace) == 11
    assert error.trace[0] == (0, math.inf, 0.0)


def test_solver_preconditions(exact_aiet, golden_float_iet):
    with pytest.raises(PreconditionError):
        solve_unique_aiet(exact_aiet)
    with pytest.raises(PreconditionError):
        solve_unique_aiet(golden_float_iet, tolerance=0)


def test_classical_cone_trace(golden_iet):
    trace = cone_diameter_trace(golden_iet, None, 60)
    assert len(trace) == 61
    assert trace.first_finite == 2
    assert math.isinf(trace[1])
    finite = [x for x in trace if math.isfinite(x)]
    assert finite == sorted(finite, reverse=True)
    assert trace[40] / trace[20] < 1e-3
    assert trace.to_dict()['diameters'][0] is None


def test_twisted_cone_trace(golden_iet, golden_omega):
    trace = cone_diameter_trace(golden_iet, golden_omega, 60)
    finite = [x for x in trace if math.isfinite(x)]
    assert all(b <= a * (1 + 1e-9) for a, b in zip(finite, finite[1:]))
    assert trace.first_finite == 2
    assert trace[60] < 1e-8
    assert trace.rows()[-1][0] == 60


def test_cone_membership(golden_iet, golden_float_iet):
    assert cone_membership(golden_iet, None, golden_iet.lengths, 30).member
    outsider = cone_membership(golden_float_iet, None, [F(3, 10), F(7, 10)], 30)
    assert not outsider.member
    assert outsider.minima[0] > 0
    assert len(outsider.minima) == 31


def test_semiconjugacy_checks(golden_iet, golden_float_iet):
    assert verify_semiconjugacy(golden_iet, golden_iet.lengths, None, 100)
    assert not verify_semiconjugacy(golden_float_iet, [F(3, 10), F(7, 10)], None, 3)


def test_contraction_profile_along_bcc_times(golden_iet, golden_omega):
    ecs = estimate_ecs(golden_iet, 40)
    bcc = bcc_monitor(golden_iet, ecs, 10.0, 2, 60)
    trace = cone_diameter_trace(golden_iet, golden_omega, 60)
    profile = contraction_profile(golden_iet, golden_omega, trace, bcc)
    assert profile.times
    assert all(b - a >= 2 for a, b in zip(profile.times, profile.times[1:]))
    assert profile.kappa_hat is not None and profile.kappa_hat < 1
    assert len(profile.window_coefficients) == len(profile.times)
    assert all(0 <= k <= 1 for k in profile.window_coefficients)


def test_window_contraction_stays_below_the_uniform_bound(golden_iet, golden_omega):
    report = solve_unique_aiet(golden_iet, golden_omega, tolerance=1e-8, max_steps=200)
    diagnostics = report.diagnostics
    window = diagnostics['window']
    path = rotation_number(golden_iet, report.steps)
    omega = to_vector(report.omega, report.mode)
    for start in range(0, report.steps - window + 1, window):
        M = product_twisted(path, omega, start, start + window)
        if M.is_positive():
            assert contraction_coefficient(M) <= diagnostics['kappa'] + 1e-12
    assert report.to_dict()['diagnostics']['Gamma'] == diagnostics['Gamma']


def test_solution_lies_in_the_twisted_class(golden_iet, golden_omega):
    tolerance = 1e-8
    report = solve_unique_aiet(golden_iet, golden_omega, tolerance=tolerance, max_steps=200)
    assert report.closure_residual <= 10 * tolerance
    membership = cone_membership(golden_iet, report.omega, report.lengths, report.steps)
    assert membership.member
    assert len(membership.minima) == report.steps + 1
    assert verify_semiconjugacy(golden_iet, report.lengths, report.omega, 100,
                                closure_tolerance=to_mode(10 * tolerance, report.mode))


def test_float_solution_closes_within_the_tolerance(golden_float_iet):
    tolerance = 1e-8
    omega = [0.1 * (PHI - 1), -0.1 * (2 - PHI)]
    report = solve_unique_aiet(golden_float_iet, omega, tolerance=tolerance, max_steps=200, verify_depth=20)
    assert report.closure_residual <= 10 * tolerance


@pytest.mark.slow
def test_zero_omega_recovers_many_random_iets(rng):
    for case in range(20):
        d = 2 + case % 3
        f = random_iet(random_irreducible_permutation(d, rng), rng)
        report = solve_unique_aiet(f, None, tolerance=1e-8)
        assert report.semiconjugacy_verified
        for found, expected in zip(report.lengths, f.lengths):
            assert float(found) == pytest.approx(float(expected), abs=1e-8)
