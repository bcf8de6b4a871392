"""Hilbert projective metric on the positive cone and Birkhoff contraction.

d(u, v) = log max_{a,b} (u_a v_b) / (v_a u_b). For a positive matrix M the
image of the cone has diameter Delta(M) = max over column pairs of d, and
the contraction coefficient is tanh(Delta(M) / 4).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import mpmath
import numpy as np

from cocycle.scaled_matrix import ScaledMatrix
from iet.exceptions import NonPositiveCoordinateError, PreconditionError, SingularMatrixError
from iet.scalars import ArithmeticMode, Scalar, format_vector, infer_mode, scalar_sum, to_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectivePoint:
    """Positive vector normalized to unit l1 norm."""

    coords: Tuple[Scalar, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {'coords': format_vector(self.coords)}


def _check_positive(v: Sequence[Scalar], name: str) -> None:
    bad = [i for i, x in enumerate(v) if not x > 0]
    if bad:
        raise NonPositiveCoordinateError(f"{name} has non-positive coordinates", indices=bad)


def project(v: Sequence[Scalar]) -> ProjectivePoint:
    v = list(v)
    _check_positive(v, 'vector')
    mode = infer_mode(v)
    total = scalar_sum(to_vector(v, mode), mode)
    return ProjectivePoint(tuple(x / total for x in to_vector(v, mode)))


def _log_ratio_spread(rmax: Scalar, rmin: Scalar) -> float:
    """log(rmax / rmin) without cancellation when the ratios are close."""
    spread = (rmax - rmin) / rmin
    if isinstance(spread, mpmath.mpf):
        return float(mpmath.log1p(spread))
    if isinstance(spread, Fraction):
        if spread > 1:
            return math.log(spread.numerator + spread.denominator) - math.log(spread.denominator)
        return math.log1p(float(spread))
    return math.log1p(float(spread))


def hilbert_distance(u: Sequence[Scalar], v: Sequence[Scalar]) -> float:
    """Hilbert projective distance between two positive vectors.

    Raises:
        NonPositiveCoordinateError: a coordinate is zero or negative.
    """
    u, v = list(u), list(v)
    if len(u) != len(v):
        raise PreconditionError("Vectors of different dimension", sizes=[len(u), len(v)])
    _check_positive(u, 'u')
    _check_positive(v, 'v')
    if infer_mode(u + v) is ArithmeticMode.RATIONAL:
        # int / int would round to float
        u, v = list(to_vector(u, ArithmeticMode.RATIONAL)), list(to_vector(v, ArithmeticMode.RATIONAL))
    ratios = [a / b for a, b in zip(u, v)]
    return _log_ratio_spread(max(ratios), min(ratios))


def image_diameter(M: ScaledMatrix) -> Tuple[float, Optional[Tuple[str, str]]]:
    """Projective diameter of M(R_+^d) and the column pair realizing it.

    Infinite (with no witness) unless M is strictly positive.
    """
    if not M.is_positive():
        return math.inf, None
    entries = M.entries
    symbols = M.alphabet.symbols
    best, witness = 0.0, (symbols[0], symbols[0])
    for i in range(M.d):
        for j in range(i + 1, M.d):
            distance = hilbert_distance(entries[:, i], entries[:, j])
            if distance > best:
                best, witness = distance, (symbols[i], symbols[j])
    return best, witness


def contraction_coefficient(M: ScaledMatrix) -> float:
    """Birkhoff contraction coefficient of a non-negative invertible matrix.

    Raises:
        SingularMatrixError: M is not invertible.
    """
    if not M.is_nonnegative():
        raise PreconditionError("Contraction coefficient needs a non-negative matrix")
    if M.is_singular():
        raise SingularMatrixError("Matrix is singular")
    diameter, _ = image_diameter(M)
    if math.isinf(diameter):
        return 1.0
    return math.tanh(diameter / 4.0)


def uniform_contraction_bound(gamma: float) -> float:
    """kappa(Gamma) = tanh(log Gamma) for matrices with entries in (1/Gamma, Gamma)."""
    if not gamma >= 1:
        raise PreconditionError("Gamma must be at least 1", gamma=gamma)
    g2 = float(gamma) ** 2
    return (g2 - 1.0) / (g2 + 1.0)


def sampled_contraction_ratio(M: ScaledMatrix, samples: int, rng: np.random.Generator) -> float:
    """Largest observed d(Mv, Mw) / d(v, w) over random positive pairs."""
    matrix = M.to_float_array()
    worst = 0.0
    for _ in range(samples):
        v = rng.exponential(size=M.d) + 1e-3
        w = rng.exponential(size=M.d) + 1e-3
        base = hilbert_distance(v, w)
        if base < 1e-9:
            continue
        worst = max(worst, hilbert_distance(matrix @ v, matrix @ w) / base)
    return worst


@dataclass(frozen=True)
class ProjectiveDiagnostics:
    diameter: float
    coefficient: float
    witness: Optional[Tuple[str, str]]

    @classmethod
    def of(cls, M: ScaledMatrix) -> "ProjectiveDiagnostics":
        diameter, witness = image_diameter(M)
        coefficient = 1.0 if math.isinf(diameter) else math.tanh(diameter / 4.0)
        return cls(diameter, coefficient, witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'diameter': None if math.isinf(self.diameter) else self.diameter,
            'coefficient': self.coefficient,
            'witness': list(self.witness) if self.witness else None,
        }


__all__ = [
    'ProjectivePoint',
    'ProjectiveDiagnostics',
    'project',
    'hilbert_distance',
    'image_diameter',
    'contraction_coefficient',
    'uniform_contraction_bound',
    'sampled_contraction_ratio',
]
