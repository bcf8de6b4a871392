"""Lyapunov spectrum of the Zorich cocycle.

A random orthonormal frame is pushed through the transposed Zorich
matrices of a normalized float walk and re-orthonormalized with a QR
factorization; the exponents are the time averages of log|diag R|.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.env_loader import get_config
from iet.aiet import Aiet, make_iet
from iet.exceptions import KeaneFailureError, PreconditionError, TieError
from iet.permutation import genus
from iet.scalars import ArithmeticMode
from induction.walk import RauzyWalk
from oseledets.blocks import apply_block_transpose

logger = logging.getLogger(__name__)

MIN_ITERATIONS = 1000
_BATCHES = 20


@dataclass(frozen=True)
class SpectrumEstimate:
    exponents: Tuple[float, ...]
    iterations: int
    seed: int
    confidence: Tuple[float, ...]
    pairing_defects: Tuple[float, ...] = ()
    nonzero_count: int = 0
    genus: int = 0
    trace: List[Tuple[int, Tuple[float, ...]]] = field(default_factory=list)

    @property
    def top(self) -> float:
        return self.exponents[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'exponents': list(self.exponents),
            'iterations': self.iterations,
            'seed': self.seed,
            'confidence': list(self.confidence),
            'pairing_defects': list(self.pairing_defects),
            'nonzero_count': self.nonzero_count,
            'genus': self.genus,
            'trace': [{'k': k, 'theta': list(theta)} for k, theta in self.trace],
        }


def _float_walk(f: Aiet, zorich_cap: Optional[int]) -> RauzyWalk:
    total = float(f.total_length)
    start = make_iet(f.perm, [float(x) / total for x in f.lengths], mode=ArithmeticMode.FLOAT)
    return RauzyWalk(start, zorich_cap=zorich_cap)


def lyapunov_spectrum(
    f: Aiet,
    iterations: int,
    seed: int = 0,
    *,
    reorthonormalize_every: Optional[int] = None,
    zorich_cap: Optional[int] = None,
    trace_points: int = 200,
) -> SpectrumEstimate:
    """Estimate the d Lyapunov exponents of the Zorich cocycle over ``f``.

    Args:
        f: An IET (unit slopes).
        iterations: Number of Zorich steps, at least 1000.
        seed: Seed of the random initial frame.
        reorthonormalize_every: QR cadence in Zorich steps; defaults to
            ``RAUZYKIT_REORTHONORMALIZE_EVERY``.
        zorich_cap: Longest accepted Zorich block.
        trace_points: Number of running-average samples kept for plotting.

    Raises:
        KeaneFailureError: a length coincidence stopped the walk.
        CapExceededError: a Zorich block exceeded the cap.
    """
    if not f.is_iet:
        raise PreconditionError("Lyapunov spectrum is computed over IETs (omega = 0)")
    if iterations < MIN_ITERATIONS:
        raise PreconditionError(f"At least {MIN_ITERATIONS} iterations are required", iterations=iterations)
    every = reorthonormalize_every or get_config().get('reorthonormalize_every')

    d = f.d
    rng = np.random.default_rng(seed)
    frame, _ = np.linalg.qr(rng.standard_normal((d, d)))
    walk = _float_walk(f, zorich_cap)
    index = f.alphabet.index_map()

    increments: List[np.ndarray] = []
    marks: List[int] = []
    pending = 0
    for k in range(1, iterations + 1):
        try:
            block = walk.zorich_block()
        except TieError as exc:
            raise KeaneFailureError("Length coincidence during the Lyapunov run", step=exc.step, iteration=k) from exc
        walk.normalize()
        apply_block_transpose(frame, block, index)
        pending += 1
        if pending >= every or k == iterations:
            frame, r = np.linalg.qr(frame)
            increments.append(np.log(np.abs(np.diag(r))))
            marks.append(k)
            pending = 0

    growth = np.array(increments)
    cumulative = np.cumsum(growth, axis=0)
    exponents = cumulative[-1] / iterations
    order = np.argsort(-exponents)
    exponents = exponents[order]

    batch_rates = []
    bounds = np.array_split(np.arange(len(marks)), min(_BATCHES, len(marks)))
    previous = 0
    for chunk in bounds:
        if len(chunk) == 0:
            continue
        span = marks[chunk[-1]] - previous
        batch_rates.append(growth[chunk].sum(axis=0)[order] / span)
        previous = marks[chunk[-1]]
    batch_rates = np.array(batch_rates)
    confidence = batch_rates.var(axis=0, ddof=1) / len(batch_rates) if len(batch_rates) > 1 else np.zeros(d)

    stride = max(1, len(marks) // trace_points)
    trace = [
        (marks[i], tuple(float(x) for x in (cumulative[i] / marks[i])[order]))
        for i in range(stride - 1, len(marks), stride)
    ]

    top = float(exponents[0])
    defects = tuple(float(abs(exponents[i] + exponents[d - 1 - i])) for i in range(d // 2))
    nonzero = int(np.sum(np.abs(exponents) > 0.1 * abs(top)))

    logger.info("Lyapunov run: d=%d, %d Zorich steps, theta_1=%.6f", d, iterations, top)
    return SpectrumEstimate(
        exponents=tuple(float(x) for x in exponents),
        iterations=iterations,
        seed=seed,
        confidence=tuple(float(x) for x in confidence),
        pairing_defects=defects,
        nonzero_count=nonzero,
        genus=genus(f.perm),
        trace=trace,
    )


__all__ = ['SpectrumEstimate', 'lyapunov_spectrum', 'MIN_ITERATIONS']
