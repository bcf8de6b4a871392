"""Unique AIET with a prescribed rotation number and log-slope vector.

The nested cones A_n(gamma, omega)(R_+^d) shrink to the ray of the length
vector; once the projective diameter is below tolerance the image of the
simplex barycenter is returned.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from config.env_loader import get_config
from cocycle.products import product_twisted
from cocycle.trajectory import slope_trajectory
from iet.aiet import Aiet
from iet.exceptions import (
    CocycleOverflowError,
    MaxStepsExceededError,
    OrthogonalityViolationError,
    PreconditionError,
)
from iet.scalars import (
    ArithmeticMode,
    Scalar,
    exp_scalar,
    format_vector,
    scalar_sum,
    to_mode,
    to_vector,
)
from projective.hilbert import uniform_contraction_bound
from solver.cone import ConeTracker, DiameterTrace, _omega_vector, twisted_product_mode
from solver.semiconjugacy import verify_semiconjugacy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveReport:
    lengths: Tuple[Scalar, ...]
    steps: int
    final_diameter: float
    closure_residual: float
    verified_depth: int
    diameter_trace: DiameterTrace
    converged_at: Optional[int] = None
    omega: Tuple[Scalar, ...] = ()
    projection_distance: float = 0.0
    semiconjugacy_verified: bool = False
    mode: ArithmeticMode = ArithmeticMode.RATIONAL
    tolerance: float = 0.0
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lengths': format_vector(self.lengths),
            'steps': self.steps,
            'final_diameter': self.final_diameter,
            'closure_residual': self.closure_residual,
            'verified_depth': self.verified_depth,
            'diameter_trace': self.diameter_trace.to_dict(),
            'converged_at': self.converged_at,
            'omega': format_vector(self.omega),
            'projection_distance': self.projection_distance,
            'semiconjugacy_verified': self.semiconjugacy_verified,
            'mode': self.mode.value,
            'tolerance': self.tolerance,
            'diagnostics': dict(self.diagnostics),
        }


def _project_orthogonal(
    f: Aiet, omega: List[Scalar], mode: ArithmeticMode, threshold: float
) -> Tuple[List[Scalar], float]:
    """Check <omega, lambda> against the threshold and project onto lambda-perp.

    Returns the projected omega and the distance moved.
    """
    if mode is ArithmeticMode.RATIONAL:
        return list(omega), 0.0
    lam = to_vector(f.lengths, mode)
    total = scalar_sum(lam, mode)
    lam = [x / total for x in lam]
    w = list(to_vector(omega, mode))
    inner = scalar_sum([a * b for a, b in zip(w, lam)], mode)
    omega_norm = math.sqrt(sum(float(x) ** 2 for x in w))

    exact_inputs = f.mode is ArithmeticMode.RATIONAL and all(not isinstance(x, float) for x in omega)
    if exact_inputs:
        exact = sum((a * b for a, b in zip(omega, f.lengths)), start=0)
        if exact != 0:
            raise OrthogonalityViolationError(
                "omega is not orthogonal to the length vector",
                inner=float(exact),
                threshold=0.0,
            )
    if abs(float(inner)) > threshold * omega_norm:
        raise OrthogonalityViolationError(
            "omega is not orthogonal to the length vector",
            inner=float(inner),
            threshold=threshold * omega_norm,
        )
    lam_sq = scalar_sum([x * x for x in lam], mode)
    projected = [a - inner / lam_sq * b for a, b in zip(w, lam)]
    distance = abs(float(inner)) / math.sqrt(float(lam_sq))
    return projected, distance


def _closure_residual(lengths: List[Scalar], omega: List[Scalar], mode: ArithmeticMode) -> float:
    rho = [1] * len(lengths) if mode is ArithmeticMode.RATIONAL else [exp_scalar(w, mode) for w in omega]
    image = scalar_sum([r * l for r, l in zip(rho, lengths)], mode)
    return float(abs(image - scalar_sum(lengths, mode)))


def _cone_constants(tracker: ConeTracker, trace: DiameterTrace, omega: List[Scalar],
                    mode: ArithmeticMode) -> Dict[str, Any]:
    """D, Gamma and kappa(Gamma) for the run.

    D is the projected diameter of the first positive cone. Windows of N
    steps, N the first positive step, are laid end to end along the path;
    Gamma bounds the entries of every positive window once it is scaled to
    the geometric mean of its extreme entries.
    """
    window = trace.first_finite
    if window is None:
        return {'D': None, 'Gamma': None, 'kappa': None, 'window': None, 'windows': 0}
    path = tracker.path()
    omega_in_mode = omega if mode is ArithmeticMode.RATIONAL else to_vector(omega, mode)
    trajectory = slope_trajectory(path, omega_in_mode)
    gamma, count = 1.0, 0
    for start in range(0, tracker.steps - window + 1, window):
        M = product_twisted(path, m=start, n=start + window, trajectory=trajectory)
        if not M.is_positive():
            continue
        spread = float(M.entries.max() / M.entries.min())
        gamma = max(gamma, math.sqrt(spread))
        count += 1
    return {
        'D': trace[window],
        'Gamma': gamma if count else None,
        'kappa': uniform_contraction_bound(gamma) if count else None,
        'window': window,
        'windows': count,
    }


def solve_unique_aiet(
    f: Aiet,
    omega=None,
    tolerance: float = 1e-8,
    max_steps: int = 10000,
    *,
    verify_depth: int = 100,
    orthogonality_threshold: Optional[float] = None,
) -> SolveReport:
    """Find the AIET with rotation number gamma(f) and log-slopes ``omega``.

    Args:
        f: The IET whose rotation number is prescribed.
        omega: Log-slope vector, orthogonal to the lengths of ``f``.
        tolerance: Target projective diameter of the cone.
        max_steps: Rauzy steps before giving up.
        verify_depth: Depth of the final rotation-number comparison; the
            run takes at least ``verify_depth + 5`` steps.
        orthogonality_threshold: Relative bound on <omega, lambda>; defaults
            to ``RAUZYKIT_ORTHOGONALITY_THRESHOLD``.

    Raises:
        OrthogonalityViolationError: <omega, lambda> is above the threshold.
        MaxStepsExceededError: no convergence; ``trace`` holds the diameters.
        CocycleOverflowError: slopes left the float range; ``trace`` attached.
        KeaneFailureError: a length coincidence stopped the walk.
    """
    if not f.is_iet:
        raise PreconditionError("The prescribed rotation number comes from an IET (unit slopes)")
    if not tolerance > 0:
        raise PreconditionError("Tolerance must be positive", tolerance=tolerance)
    if max_steps < 1:
        raise PreconditionError("max_steps must be positive", max_steps=max_steps)
    threshold = orthogonality_threshold if orthogonality_threshold is not None else get_config().get_tolerances()['orthogonality']

    omega_vec = _omega_vector(f, omega)
    mode = twisted_product_mode(f, omega_vec)
    projected, distance = _project_orthogonal(f, omega_vec, mode, threshold)
    if distance:
        logger.info("Projected omega onto the length hyperplane (moved %.3e)", distance)

    tracker = ConeTracker(f, projected)
    trace = DiameterTrace([0], [math.inf], [0.0])
    converged_at: Optional[int] = None
    min_steps = verify_depth + 5
    lengths: List[Scalar] = []
    residual = math.inf

    logger.info("Solving: d=%d mode=%s tolerance=%g max_steps=%d", f.d, mode.value, tolerance, max_steps)
    try:
        while tracker.steps < max_steps:
            tracker.advance()
            trace.steps.append(tracker.steps)
            trace.diameters.append(tracker.diameter)
            trace.logscales.append(tracker.logscale)
            if tracker.diameter > tolerance:
                continue
            if converged_at is None:
                converged_at = tracker.steps
            if tracker.steps < min_steps:
                continue
            lengths = tracker.barycenter_image()
            residual = _closure_residual(lengths, projected, mode)
            if residual <= 10 * tolerance:
                break
    except CocycleOverflowError as exc:
        exc.trace = trace.rows()
        raise

    if not lengths or residual > 10 * tolerance:
        raise MaxStepsExceededError(
            "Cone diameter did not reach the tolerance",
            trace=trace.rows(),
            steps=tracker.steps,
            final_diameter=tracker.diameter,
            closure_residual=residual,
        )

    verified = verify_semiconjugacy(
        f,
        lengths,
        None if mode is ArithmeticMode.RATIONAL else projected,
        verify_depth,
        closure_tolerance=to_mode(10 * tolerance, mode) if not mode.is_exact else None,
    )
    logger.info("Converged at step %d (stopped at %d), diameter %.3e, semiconjugacy %s",
                converged_at, tracker.steps, tracker.diameter, verified)
    return SolveReport(
        lengths=tuple(lengths),
        steps=tracker.steps,
        final_diameter=tracker.diameter,
        closure_residual=residual,
        verified_depth=verify_depth,
        diameter_trace=trace,
        converged_at=converged_at,
        omega=tuple(projected),
        projection_distance=distance,
        semiconjugacy_verified=verified,
        mode=mode,
        tolerance=tolerance,
        diagnostics={
            'first_positive_step': trace.first_finite,
            'final_logscale': tracker.logscale,
            **_cone_constants(tracker, trace, projected, mode),
        },
    )


__all__ = ['SolveReport', 'solve_unique_aiet']
