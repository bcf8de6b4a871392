"""Executable checks of the twisted-product lemma.

For a window [m, n) of a Rauzy path and slopes rho along it:

  (i)   every diagonal entry of A_{m,n}(gamma, omega) is positive;
  (ii)  every positive entry of A_{m,n}(gamma) stays positive when twisted;
  (iii) classical * min(1, rho_min)^(n-m) <= twisted <= classical * max(1, rho_max)^(n-m).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from cocycle.products import product_classical, product_twisted
from cocycle.scaled_matrix import ScaledMatrix
from cocycle.trajectory import slope_products, slope_trajectory
from iet.exceptions import PreconditionError
from iet.scalars import ArithmeticMode, format_scalar
from induction.path import RauzyPath

logger = logging.getLogger(__name__)

_RELATIVE_SLACK = 1e-12


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'witness': self.witness}


@dataclass(frozen=True)
class MatrixLemmaReport:
    m: int
    n: int
    rho_min: float
    rho_max: float
    clauses: Dict[str, ClauseResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self.m,
            'n': self.n,
            'rho_min': self.rho_min,
            'rho_max': self.rho_max,
            'passed': self.passed,
            'clauses': {k: v.to_dict() for k, v in self.clauses.items()},
        }


def _witness(symbols, i: int, j: int, **values) -> Dict[str, Any]:
    return {'row': symbols[i], 'column': symbols[j], **{k: format_scalar(v) for k, v in values.items()}}


def verify_matrix_lemma(
    path: RauzyPath,
    omega=None,
    m: int = 0,
    n: Optional[int] = None,
    *,
    slopes=None,
    twisted: Optional[ScaledMatrix] = None,
) -> MatrixLemmaReport:
    """Check clauses (i)-(iii) on the window [m, n).

    Args:
        twisted: Replaces the computed twisted product; used to check that
            a corrupted matrix is caught.
    """
    n = len(path) if n is None else n
    if not 0 <= m < n:
        raise PreconditionError("Lemma window must satisfy 0 <= m < n", m=m, n=n)

    if slopes is not None:
        trajectory = slope_products(path, slopes, n)
    else:
        trajectory = slope_trajectory(path, omega if omega is not None else [0] * path.start.d, n)
    classical = product_classical(path, m, n).entries
    if twisted is None:
        twisted = product_twisted(path, m=m, n=n, trajectory=trajectory, rescale=False)
    values = twisted.to_array()
    exact = twisted.mode is ArithmeticMode.RATIONAL

    rhos = [r for k in range(m, n) for r in trajectory.rho(k)]
    rho_min, rho_max = min(rhos), max(rhos)
    upper_factor = max(1, rho_max) ** (n - m)
    lower_factor = min(1, rho_min) ** (n - m)
    symbols = path.start.alphabet.symbols
    d = len(symbols)
    clauses: Dict[str, ClauseResult] = {}

    bad_diagonal = next((i for i in range(d) if not values[i, i] > 0), None)
    clauses['diagonal'] = ClauseResult(
        'diagonal',
        bad_diagonal is None,
        None if bad_diagonal is None else _witness(symbols, bad_diagonal, bad_diagonal, twisted=values[bad_diagonal, bad_diagonal]),
    )

    witness = None
    for i in range(d):
        for j in range(d):
            if classical[i, j] > 0 and not values[i, j] > 0:
                witness = _witness(symbols, i, j, classical=classical[i, j], twisted=values[i, j])
                break
        if witness:
            break
    clauses['positivity'] = ClauseResult('positivity', witness is None, witness)

    witness = None
    for i in range(d):
        for j in range(d):
            upper = classical[i, j] * upper_factor
            lower = classical[i, j] * lower_factor
            slack = 0 if exact else _RELATIVE_SLACK * max(abs(upper), 1)
            if values[i, j] > upper + slack or values[i, j] < lower - slack:
                witness = _witness(symbols, i, j, twisted=values[i, j], lower=lower, upper=upper)
                break
        if witness:
            break
    clauses['bound'] = ClauseResult('bound', witness is None, witness)

    report = MatrixLemmaReport(m, n, float(rho_min), float(rho_max), clauses)
    if not report.passed:
        logger.info("Matrix lemma failed on [%d, %d): %s", m, n,
                    [name for name, c in clauses.items() if not c.passed])
    return report


__all__ = ['ClauseResult', 'MatrixLemmaReport', 'verify_matrix_lemma']
