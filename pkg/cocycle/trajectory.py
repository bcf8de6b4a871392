"""Slope iterates along a Rauzy path.

Each step adds the winner's log-slope to the loser's (equivalently
multiplies the slopes), so omega^n = A_{0,n}(gamma)^T omega^0 with the
classical product. Arithmetic stays in the type of the input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from cocycle.elementary import exp_vector, twisted_mode
from iet.aiet import alphabet_vector
from iet.exceptions import InsufficientPathError
from iet.scalars import ArithmeticMode, Scalar, format_vector, infer_mode, is_zero_vector, log_scalar, to_vector
from induction.path import RauzyPath

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlopeTrajectory:
    """omega^0, ..., omega^n (or rho^0, ..., rho^n when ``multiplicative``)."""

    path: RauzyPath
    values: Tuple[Tuple[Scalar, ...], ...]
    multiplicative: bool = False
    mode: ArithmeticMode = ArithmeticMode.RATIONAL

    def __len__(self) -> int:
        return len(self.values)

    @property
    def classical(self) -> bool:
        if self.multiplicative:
            return all(all(r == 1 for r in v) for v in self.values)
        return is_zero_vector(self.values[0])

    @property
    def product_mode(self) -> ArithmeticMode:
        """Mode in which the matching twisted matrices are evaluated."""
        if self.multiplicative or self.classical:
            return self.mode
        return twisted_mode(self.values[0])

    @property
    def omegas(self) -> Tuple[Tuple[Scalar, ...], ...]:
        if not self.multiplicative:
            return self.values
        mode = ArithmeticMode.FLOAT if self.mode.is_exact else self.mode
        return tuple(tuple(log_scalar(r, mode) for r in v) for v in self.values)

    def rho(self, k: int) -> Tuple[Scalar, ...]:
        """Slopes at path index ``k`` (before edge k is taken)."""
        values = self.values[k]
        if self.multiplicative:
            return values
        if self.classical:
            return (1,) * len(values)
        mode = self.product_mode
        return exp_vector(to_vector(values, mode), mode)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'multiplicative': self.multiplicative,
            'mode': self.mode.value,
            'values': [format_vector(v) for v in self.values],
        }


def _iterate(path: RauzyPath, start: Sequence[Scalar], n: int, combine) -> Tuple[Tuple[Scalar, ...], ...]:
    if n > len(path):
        raise InsufficientPathError("Path shorter than the requested trajectory", requested=n, length=len(path))
    index = path.start.alphabet.index_map()
    current = list(start)
    values = [tuple(current)]
    for edge in path.edges[:n]:
        w, l = index[edge.winner], index[edge.loser]
        current[l] = combine(current[l], current[w])
        values.append(tuple(current))
    return tuple(values)


def slope_trajectory(path: RauzyPath, omega, n: Optional[int] = None) -> SlopeTrajectory:
    """Log-slopes omega^0..omega^n along ``path``.

    Raises:
        InsufficientPathError: the path has fewer than ``n`` edges.
    """
    n = len(path) if n is None else n
    raw = alphabet_vector(omega, path.start.alphabet, 'omega')
    mode = infer_mode(raw)
    values = _iterate(path, to_vector(raw, mode), n, lambda loser, winner: loser + winner)
    return SlopeTrajectory(path, values, multiplicative=False, mode=mode)


def slope_products(path: RauzyPath, slopes, n: Optional[int] = None) -> SlopeTrajectory:
    """Slopes rho^0..rho^n along ``path``; exact for rational input."""
    n = len(path) if n is None else n
    raw = alphabet_vector(slopes, path.start.alphabet, 'slopes')
    mode = infer_mode(raw)
    values = _iterate(path, to_vector(raw, mode), n, lambda loser, winner: loser * winner)
    return SlopeTrajectory(path, values, multiplicative=True, mode=mode)


__all__ = ['SlopeTrajectory', 'slope_trajectory', 'slope_products']
