"""Bounded central condition monitor.

Scans Rauzy times n for which the transposed classical product restricted
to the estimated E_cs has norm at most V while the forward window
A_{n,n+N} is strictly positive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from cocycle.products import product_classical
from iet.aiet import Aiet
from iet.exceptions import PreconditionError
from induction.path import rotation_number
from oseledets.subspace import SubspaceEstimate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BccReport:
    times: List[int] = field(default_factory=list)
    norms: List[float] = field(default_factory=list)
    V_used: float = 0.0
    N: int = 1
    depth: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'times': list(self.times),
            'norms': list(self.norms),
            'V_used': self.V_used,
            'N': self.N,
            'depth': self.depth,
        }


def _restricted_norm(frame: np.ndarray) -> float:
    """Spectral norm of a (possibly multiprecision) d x k frame."""
    largest = max(abs(x) for x in frame.flat)
    if largest == 0:
        return 0.0
    scaled = np.array([[float(x / largest) for x in row] for row in frame], dtype=float)
    return float(largest) * float(np.linalg.norm(scaled, 2))


def bcc_monitor(f: Aiet, ecs: SubspaceEstimate, V: float, N: int, depth: int) -> BccReport:
    """Times n <= depth - N with |A_n^T on E_cs| <= V and A_{n,n+N} positive.

    An empty report is a legal outcome.
    """
    if N < 1:
        raise PreconditionError("Positivity window must be at least 1", N=N)
    if N > depth or V <= 0:
        return BccReport([], [], float(V), N, depth)

    path = rotation_number(f, depth)
    index = f.alphabet.index_map()
    source = ecs.precise_basis if ecs.precise_basis is not None else ecs.basis
    frame = np.array(source, dtype=object if source.dtype == object else float)

    times: List[int] = []
    norms: List[float] = []
    for n in range(depth - N + 1):
        norm = _restricted_norm(frame)
        if norm <= V and product_classical(path, n, n + N).is_positive():
            times.append(n)
            norms.append(norm)
        edge = path.edges[n]
        w, l = index[edge.winner], index[edge.loser]
        frame[l] = frame[l] + frame[w]

    logger.info("BCC scan to depth %d: %d hits (V=%g, N=%d)", depth, len(times), V, N)
    return BccReport(times, norms, float(V), N, depth)


__all__ = ['BccReport', 'bcc_monitor']
