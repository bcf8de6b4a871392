"""Accumulated cocycle products A_{m,n}(gamma, omega) and B_{m,n}.

A_{m,n} = A(m) A(m+1) ... A(n-1). Right-multiplying by an elementary
matrix only rewrites the loser column, so products are accumulated by
column operations instead of full matrix products.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from cocycle.elementary import resolve_slopes
from cocycle.scaled_matrix import ScaledMatrix, identity_entries, rescale_entries
from cocycle.trajectory import SlopeTrajectory, slope_products, slope_trajectory
from iet.exceptions import CocycleOverflowError, InsufficientPathError, PreconditionError
from iet.permutation import Alphabet
from iet.scalars import ArithmeticMode, Scalar
from induction.path import RauzyPath
from induction.walk import RauzyEdge

logger = logging.getLogger(__name__)

# float entries are renormalized once they pass this bound
_FLOAT_RESCALE_BOUND = 2.0 ** 512


class ProductAccumulator:
    """Running right product of elementary matrices.

    Owned by a single consumer. ``snapshot()`` returns an immutable
    ScaledMatrix of the current product.
    """

    def __init__(self, alphabet: Alphabet, mode: ArithmeticMode, *, rescale: bool = True) -> None:
        self.alphabet = alphabet
        self.mode = mode
        self.rescale = rescale
        self._index = alphabet.index_map()
        self.entries = identity_entries(len(alphabet), mode).copy()
        self.logscale = 0.0
        self.steps = 0

    def push(self, edge: RauzyEdge, rho: Sequence[Scalar]) -> None:
        w, l = self._index[edge.winner], self._index[edge.loser]
        if edge.type == 0:
            self.entries[:, l] = self.entries[:, l] + rho[l] * self.entries[:, w]
        else:
            self.entries[:, l] = rho[w] * self.entries[:, l] + self.entries[:, w]
        self.steps += 1
        if self.mode is ArithmeticMode.FLOAT:
            largest = self.entries.max()
            if not np.isfinite(largest):
                raise CocycleOverflowError("Float cocycle product overflowed", step=self.steps)
            if self.rescale and largest > _FLOAT_RESCALE_BOUND:
                self._renormalize()

    def _renormalize(self) -> None:
        self.entries, added = rescale_entries(self.entries, self.mode)
        self.entries = np.array(self.entries)
        self.logscale += added

    def snapshot(self) -> ScaledMatrix:
        return ScaledMatrix.create(self.alphabet, self.entries.copy(), self.mode, self.logscale,
                                   rescale=self.rescale, invertible=True)

    def is_positive(self) -> bool:
        return bool(all(x > 0 for x in self.entries.flat))


def _check_range(path: RauzyPath, m: int, n: int) -> None:
    if m < 0 or n < m:
        raise PreconditionError("Product range must satisfy 0 <= m <= n", m=m, n=n)
    if n > len(path):
        raise InsufficientPathError("Path shorter than the product range", n=n, length=len(path))


def _trajectory(path: RauzyPath, n: int, omega, slopes) -> Optional[SlopeTrajectory]:
    if omega is not None and slopes is not None:
        raise PreconditionError("Pass either omega or slopes, not both")
    if slopes is not None:
        return slope_products(path, slopes, n)
    if omega is not None:
        return slope_trajectory(path, omega, n)
    return None


def product_twisted(
    path: RauzyPath,
    omega=None,
    m: int = 0,
    n: Optional[int] = None,
    *,
    slopes=None,
    trajectory: Optional[SlopeTrajectory] = None,
    rescale: bool = True,
) -> ScaledMatrix:
    """A_{m,n}(gamma, omega) along ``path``.

    Args:
        path: Rauzy path; its start slopes are ``omega`` (or ``slopes``).
        omega: Log-slopes at path index 0; omitted for the classical product.
        m, n: Edge range [m, n); ``n`` defaults to the path length.
        slopes: Exact slopes at index 0, instead of omega.
        trajectory: Precomputed slope trajectory covering index ``n - 1``.
        rescale: Keep float entries normalized; disabling it can overflow.

    Raises:
        InsufficientPathError: ``n`` exceeds the path length.
        CocycleOverflowError: float overflow of slopes or entries.
    """
    n = len(path) if n is None else n
    _check_range(path, m, n)
    if trajectory is None:
        trajectory = _trajectory(path, n, omega, slopes)

    if trajectory is None or trajectory.classical:
        _, mode = resolve_slopes(path.start.alphabet)
        if trajectory is not None:
            mode = trajectory.product_mode
        accumulator = ProductAccumulator(path.start.alphabet, mode, rescale=rescale)
        ones = (1,) * path.start.d
        for edge in path.edges[m:n]:
            accumulator.push(edge, ones)
        return accumulator.snapshot()

    if len(trajectory) < n:
        raise InsufficientPathError("Slope trajectory shorter than the product range", n=n, length=len(trajectory))
    accumulator = ProductAccumulator(path.start.alphabet, trajectory.product_mode, rescale=rescale)
    for k in range(m, n):
        accumulator.push(path.edges[k], trajectory.rho(k))
    return accumulator.snapshot()


def product_classical(path: RauzyPath, m: int = 0, n: Optional[int] = None) -> ScaledMatrix:
    """A_{m,n}(gamma) with exact integer entries."""
    return product_twisted(path, None, m, n)


def accelerated_product(
    path: RauzyPath,
    omega=None,
    m: int = 0,
    n: int = 1,
    *,
    slopes=None,
    rescale: bool = True,
) -> ScaledMatrix:
    """B_{m,n} = A_{z_m, z_n} between Zorich times of ``path``.

    Raises:
        InsufficientPathError: z_n is not determined by the path prefix.
    """
    if m < 0 or n < m:
        raise PreconditionError("Product range must satisfy 0 <= m <= n", m=m, n=n)
    times = path.zorich_times()
    if n >= len(times):
        raise InsufficientPathError(
            "Path does not contain the requested Zorich time",
            requested=n,
            available=len(times) - 1,
        )
    return product_twisted(path, omega, times[m], times[n], slopes=slopes, rescale=rescale)


__all__ = ['ProductAccumulator', 'product_twisted', 'product_classical', 'accelerated_product']
