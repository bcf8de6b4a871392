"""Finite-depth Keane condition check.

A verdict of ``passes-to-depth`` only says that no forward orbit of an
interior discontinuity hit an interior discontinuity within ``depth``
iterates; it is not a proof of Keane's condition.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from config.env_loader import get_config
from iet.aiet import Aiet, domain_singularities, domain_starts, evaluate, image_starts
from iet.exceptions import PreconditionError
from iet.scalars import ArithmeticMode, Scalar, default_tolerance, format_scalar, to_mode

logger = logging.getLogger(__name__)


class KeaneStatus(str, Enum):
    PASSES_TO_DEPTH = "passes-to-depth"
    FAILS = "fails"


@dataclass(frozen=True)
class KeaneWitness:
    """f^iterate(discontinuity of ``symbol``) equals the discontinuity of ``hit_symbol``."""

    symbol: str
    iterate: int
    hit_symbol: str
    point: Scalar

    def to_dict(self) -> Dict[str, Any]:
        return {
            'symbol': self.symbol,
            'iterate': self.iterate,
            'hit_symbol': self.hit_symbol,
            'point': format_scalar(self.point),
        }


@dataclass(frozen=True)
class KeaneVerdict:
    status: KeaneStatus
    depth: int
    witness: Optional[KeaneWitness] = None

    @property
    def passes(self) -> bool:
        return self.status is KeaneStatus.PASSES_TO_DEPTH

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status.value,
            'depth': self.depth,
            'witness': self.witness.to_dict() if self.witness else None,
        }


def _collision_tolerance(f: Aiet, tolerance: Optional[Scalar]) -> Scalar:
    if f.mode is ArithmeticMode.RATIONAL:
        return to_mode(0, f.mode)
    if tolerance is not None:
        return to_mode(tolerance, f.mode)
    relative = get_config().get_tolerances()['keane'] if f.mode is ArithmeticMode.FLOAT else default_tolerance(f.mode)
    return relative * f.total_length


def _wrap(x: Scalar, total: Scalar) -> Scalar:
    """Fold float drift past either end of [0, total) back into the domain."""
    if x >= total:
        return x - total
    if x < 0:
        return x + total
    return x


def check_keane(f: Aiet, depth: int, tolerance: Optional[Scalar] = None) -> KeaneVerdict:
    """Test forward orbits of the interior discontinuities up to ``depth`` iterates.

    Args:
        f: The map to test.
        depth: Number of iterates, at least 1.
        tolerance: Absolute collision tolerance for float and multiprecision
            modes; defaults to ``RAUZYKIT_KEANE_TOLERANCE * |l|_1``. Ignored in
            rational mode, where the test is exact.
    """
    if depth < 1:
        raise PreconditionError("Keane depth must be at least 1", depth=depth)

    tol = _collision_tolerance(f, tolerance)
    singularities = domain_singularities(f)
    targets = sorted(singularities, key=lambda item: item[1])
    target_points = [point for _, point in targets]

    # precomputed piecewise-linear data, in top order
    top = f.perm.top
    starts = domain_starts(f)
    images = image_starts(f)
    breakpoints = [starts[s] for s in top]
    pieces = [(starts[s], images[s], f.slope(s)) for s in top]

    def apply(x: Scalar) -> Scalar:
        a, c, rho = pieces[max(bisect_right(breakpoints, x) - 1, 0)]
        return c + rho * (x - a)

    def hit(x: Scalar) -> Optional[str]:
        index = bisect_right(target_points, x)
        for j in (index - 1, index):
            if 0 <= j < len(targets) and abs(x - target_points[j]) <= tol:
                return targets[j][0]
        return None

    orbits = [point for _, point in singularities]
    total = f.total_length
    for iterate in range(1, depth + 1):
        for i, (symbol, _) in enumerate(singularities):
            x = _wrap(apply(orbits[i]), total)
            orbits[i] = x
            target = hit(x)
            if target is not None:
                witness = KeaneWitness(symbol, iterate, target, x)
                logger.debug("Keane collision: %s", witness.to_dict())
                return KeaneVerdict(KeaneStatus.FAILS, depth, witness)
    return KeaneVerdict(KeaneStatus.PASSES_TO_DEPTH, depth)


def replay_witness(f: Aiet, verdict: KeaneVerdict, tolerance: Optional[Scalar] = None) -> bool:
    """Re-evaluate the witness orbit and confirm the collision."""
    if verdict.witness is None:
        return False
    witness = verdict.witness
    points = dict(domain_singularities(f))
    x = points[witness.symbol]
    for _ in range(witness.iterate):
        x = evaluate(f, x)
    tol = _collision_tolerance(f, tolerance)
    return abs(x - points[witness.hit_symbol]) <= tol and abs(x - witness.point) <= tol


__all__ = ['KeaneStatus', 'KeaneWitness', 'KeaneVerdict', 'check_keane', 'replay_witness']
