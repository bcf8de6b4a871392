"""Central-stable subspace estimates and growth-rate diagnostics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from config.env_loader import get_config
from iet.aiet import Aiet, alphabet_vector
from iet.exceptions import PreconditionError, ValidationFailureError, ZeroVectorError
from iet.permutation import genus
from iet.scalars import format_scalar, log_abs
from induction.walk import ZorichBlock
from oseledets.blocks import apply_block, apply_block_transpose, zorich_blocks

logger = logging.getLogger(__name__)

LAMBDA_RESIDUAL_BOUND = 1e-6
VALIDATION_MIN_HORIZON = 8


@dataclass(frozen=True)
class GrowthRate:
    """log|B_k^T v| for k = 0..n, its running averages and its late slope."""

    slope: float
    trace: Tuple[float, ...]
    log_norms: Tuple[float, ...]

    @property
    def average(self) -> float:
        """Mean of (1/k) log|B_k^T v| over the final half of the horizon."""
        late = self.trace[len(self.trace) // 2:]
        return float(np.mean(late))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'slope': self.slope,
            'average': self.average,
            'trace': list(self.trace),
            'log_norms': list(self.log_norms),
        }


@dataclass(frozen=True, eq=False)
class SubspaceEstimate:
    """Orthonormal basis (columns) of the estimated E_cs."""

    basis: np.ndarray
    depth: int
    growth_slopes: Tuple[float, ...]
    theta_top: float
    genus: int
    lambda_residuals: Tuple[float, ...] = ()
    precise_basis: Optional[np.ndarray] = None
    growth_rates: Tuple[float, ...] = ()

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> List[np.ndarray]:
        return [self.basis[:, j] for j in range(self.dimension)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'basis': [[float(x) for x in self.basis[:, j]] for j in range(self.dimension)],
            'depth': self.depth,
            'dimension': self.dimension,
            'growth_slopes': list(self.growth_slopes),
            'growth_rates': list(self.growth_rates),
            'theta_top': self.theta_top,
            'genus': self.genus,
            'lambda_residuals': list(self.lambda_residuals),
        }


def _late_slope(log_norms: Sequence[float]) -> float:
    n = len(log_norms) - 1
    ks = np.arange(n // 2, n + 1, dtype=float)
    return float(np.polyfit(ks, np.asarray(log_norms[n // 2:], dtype=float), 1)[0])


def _norm(v: np.ndarray):
    if v.dtype == object:
        return mpmath.sqrt(mpmath.fsum(x * x for x in v))
    return float(np.linalg.norm(v))


def _as_work_vector(v: Sequence) -> np.ndarray:
    if any(isinstance(x, mpmath.mpf) for x in v):
        return np.array([mpmath.mpf(x) for x in v], dtype=object)
    return np.array([float(x) for x in v], dtype=float)


def growth_rate(
    f: Aiet,
    v,
    n: int,
    *,
    blocks: Optional[Sequence[ZorichBlock]] = None,
    zorich_cap: Optional[int] = None,
) -> GrowthRate:
    """Growth of |B_k^T v| along the Zorich cocycle of ``f`` for k <= n.

    Multiprecision vectors are propagated in multiprecision.

    Raises:
        ZeroVectorError: ``v`` vanishes.
    """
    if n < 1:
        raise PreconditionError("Growth horizon must be positive", n=n)
    vector = _as_work_vector(alphabet_vector(v, f.alphabet, 'v'))
    norm = _norm(vector)
    if norm == 0:
        raise ZeroVectorError("Growth rate of the zero vector is undefined")
    if blocks is None:
        blocks = zorich_blocks(f, n, zorich_cap=zorich_cap)
    elif len(blocks) < n:
        raise PreconditionError("Not enough Zorich blocks for the horizon", n=n, blocks=len(blocks))
    index = f.alphabet.index_map()

    vector = vector / norm
    total = log_abs(norm)
    log_norms = [total]
    for block in blocks[:n]:
        apply_block_transpose(vector, block, index)
        norm = _norm(vector)
        vector = vector / norm
        total += log_abs(norm)
        log_norms.append(total)

    trace = tuple(log_norms[k] / k for k in range(1, n + 1))
    return GrowthRate(_late_slope(log_norms), trace, tuple(log_norms))


def _accumulate(f: Aiet, blocks: Sequence[ZorichBlock]) -> List[np.ndarray]:
    """Exact integer products B_0, B_1, ..., B_len(blocks)."""
    d = f.d
    index = f.alphabet.index_map()
    product = np.array([[int(i == j) for j in range(d)] for i in range(d)], dtype=object)
    products = [product.copy()]
    for block in blocks:
        apply_block(product, block, index)
        products.append(product.copy())
    return products


def _log_operator_norm(matrix: np.ndarray) -> float:
    largest = max(abs(int(x)) for x in matrix.flat)
    scaled = np.array([[x / largest for x in row] for row in matrix], dtype=float)
    return log_abs(largest) + math.log(np.linalg.norm(scaled, 2))


def top_growth_rate(
    f: Aiet,
    n: int,
    *,
    blocks: Optional[Sequence[ZorichBlock]] = None,
    zorich_cap: Optional[int] = None,
) -> GrowthRate:
    """The growth statistic of |B_k| itself; the reference for generic vectors."""
    if n < 1:
        raise PreconditionError("Growth horizon must be positive", n=n)
    blocks = list(blocks[:n]) if blocks is not None else zorich_blocks(f, n, zorich_cap=zorich_cap)
    log_norms = [_log_operator_norm(p) for p in _accumulate(f, blocks)]
    trace = tuple(log_norms[k] / k for k in range(1, n + 1))
    return GrowthRate(_late_slope(log_norms), trace, tuple(log_norms))


def estimate_ecs(
    f: Aiet,
    depth: int,
    *,
    slow_fraction: Optional[float] = None,
    zorich_cap: Optional[int] = None,
) -> SubspaceEstimate:
    """Estimate E_cs as the d - g slowest right singular directions of B_depth^T.

    Each candidate is validated by its averaged growth rate, the mean of
    (1/k) log|B_k^T v| over the final half of a horizon of
    max(VALIDATION_MIN_HORIZON, depth) Zorich steps, which must stay below
    ``slow_fraction * theta_1``, and by its orthogonality to lambda.

    Raises:
        ValidationFailureError: B_depth is not positive yet, or a candidate
            grows too fast; increase ``depth``.
    """
    if not f.is_iet:
        raise PreconditionError("E_cs is estimated over IETs (omega = 0)")
    if depth < 1:
        raise PreconditionError("Depth must be positive", depth=depth)
    slow_fraction = slow_fraction if slow_fraction is not None else get_config().get('slow_fraction')

    d = f.d
    g = genus(f.perm)
    horizon = max(VALIDATION_MIN_HORIZON, depth)
    blocks = zorich_blocks(f, horizon, zorich_cap=zorich_cap)
    product = _accumulate(f, blocks[:depth])[-1]
    if not all(x > 0 for x in product.flat):
        raise ValidationFailureError("B_depth is not strictly positive; increase depth", depth=depth)

    largest = max(int(x) for x in product.flat)
    dps = 30 + int(d * math.log10(largest)) + 1
    with mpmath.workdps(dps):
        transpose = mpmath.matrix([[mpmath.mpf(int(product[j, i])) for j in range(d)] for i in range(d)])
        _, singular, right = mpmath.svd_r(transpose)
        order = sorted(range(d), key=lambda i: singular[i], reverse=True)
        theta_top = float(mpmath.log(singular[order[0]])) / depth
        slow = order[g:]
        precise = np.array([[right[i, j] for i in slow] for j in range(d)], dtype=object)

        slopes, averages = [], []
        for column in range(precise.shape[1]):
            rate = growth_rate(f, list(precise[:, column]), horizon, blocks=blocks)
            slopes.append(rate.slope)
            averages.append(rate.average)
            logger.debug("E_cs candidate %d: rate %.3e, slope %.3e (theta_1 %.4f)",
                         column, rate.average, rate.slope, theta_top)

    bound = slow_fraction * theta_top
    if any(rate > bound for rate in averages):
        raise ValidationFailureError(
            "A candidate E_cs direction grows at a positive rate; increase depth",
            depth=depth,
            rates=averages,
            bound=bound,
        )

    basis, _ = np.linalg.qr(np.array([[float(x) for x in row] for row in precise], dtype=float))
    lam = np.array([float(x) for x in f.lengths])
    lam = lam / np.linalg.norm(lam)
    residuals = tuple(float(abs(basis[:, j] @ lam)) for j in range(basis.shape[1]))
    if any(r > LAMBDA_RESIDUAL_BOUND for r in residuals):
        raise ValidationFailureError(
            "Estimated E_cs is not orthogonal to the length vector",
            residuals=[format_scalar(r) for r in residuals],
        )

    logger.info("E_cs estimate: d=%d g=%d depth=%d theta_1=%.5f", d, g, depth, theta_top)
    return SubspaceEstimate(
        basis=basis,
        depth=depth,
        growth_slopes=tuple(slopes),
        theta_top=theta_top,
        genus=g,
        lambda_residuals=residuals,
        precise_basis=precise,
        growth_rates=tuple(averages),
    )


__all__ = ['GrowthRate', 'SubspaceEstimate', 'growth_rate', 'top_growth_rate', 'estimate_ecs']
