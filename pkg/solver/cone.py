"""Nested twisted cones A_n(gamma, omega)(R_+^d) along an IET's Rauzy path."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from cocycle.elementary import exp_vector
from cocycle.products import ProductAccumulator, product_twisted
from iet.aiet import Aiet, alphabet_vector
from iet.exceptions import KeaneFailureError, PreconditionError, TieError
from iet.scalars import ArithmeticMode, Scalar, is_zero_vector, scalar_sum, to_vector
from induction.path import RauzyPath, rotation_number
from induction.walk import RauzyEdge, RauzyWalk
from oseledets.bcc import BccReport
from projective.hilbert import contraction_coefficient, image_diameter

logger = logging.getLogger(__name__)


def twisted_product_mode(f: Aiet, omega: Sequence[Scalar]) -> ArithmeticMode:
    """Exact products for omega = 0, else float or multiprecision after ``f``."""
    if is_zero_vector(omega):
        return ArithmeticMode.RATIONAL
    if f.mode is ArithmeticMode.MULTIPRECISION:
        return ArithmeticMode.MULTIPRECISION
    return ArithmeticMode.FLOAT


@dataclass(frozen=True)
class DiameterTrace:
    """Projective diameters of the nested cones as computed at each step."""

    steps: List[int] = field(default_factory=list)
    diameters: List[float] = field(default_factory=list)
    logscales: List[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.diameters)

    def __iter__(self):
        return iter(self.diameters)

    def __getitem__(self, k: int) -> float:
        return self.diameters[k]

    @property
    def first_finite(self) -> Optional[int]:
        return next((s for s, x in zip(self.steps, self.diameters) if math.isfinite(x)), None)

    def rows(self) -> List[tuple]:
        return list(zip(self.steps, self.diameters, self.logscales))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'steps': list(self.steps),
            'diameters': [x if math.isfinite(x) else None for x in self.diameters],
            'logscales': list(self.logscales),
        }


class ConeTracker:
    """Walks ``f`` and accumulates A_n(gamma(f), omega) with its diameter.

    Single consumer; ``omega`` holds the current iterate omega^n.
    """

    def __init__(self, f: Aiet, omega: Sequence[Scalar]) -> None:
        self.f = f
        self.mode = twisted_product_mode(f, omega)
        self.classical = self.mode is ArithmeticMode.RATIONAL
        self.omega = list(to_vector(omega, self.mode)) if not self.classical else list(omega)
        self.walk = RauzyWalk(f)
        self.accumulator = ProductAccumulator(f.alphabet, self.mode)
        self._index = f.alphabet.index_map()
        self._ones = (1,) * f.d
        self.edges: List[RauzyEdge] = []
        self.diameter = math.inf

    @property
    def steps(self) -> int:
        return len(self.edges)

    def advance(self) -> RauzyEdge:
        try:
            edge = self.walk.step()
        except TieError as exc:
            raise KeaneFailureError("Length coincidence while building cones", step=exc.step) from exc
        rho = self._ones if self.classical else exp_vector(self.omega, self.mode)
        self.accumulator.push(edge, rho)
        if not self.classical:
            w, l = self._index[edge.winner], self._index[edge.loser]
            self.omega[l] = self.omega[l] + self.omega[w]
        self.edges.append(edge)
        if self.accumulator.is_positive():
            self.diameter, _ = image_diameter(self.accumulator.snapshot())
        return edge

    @property
    def logscale(self) -> float:
        return self.accumulator.logscale

    def barycenter_image(self) -> List[Scalar]:
        """P_A(A_n * barycenter) in the product's arithmetic."""
        rows = [scalar_sum(row, self.mode) for row in self.accumulator.entries]
        total = scalar_sum(rows, self.mode)
        return [x / total for x in rows]

    def path(self) -> RauzyPath:
        return RauzyPath(self.f.perm, tuple(self.edges))


def _omega_vector(f: Aiet, omega) -> list:
    if omega is None:
        return [0] * f.d
    return alphabet_vector(omega, f.alphabet, 'omega')


def cone_diameter_trace(f: Aiet, omega, depth: int) -> DiameterTrace:
    """Diameters of P(A_n(gamma, omega)(simplex)) for n = 0..depth.

    Infinite until the product first becomes strictly positive.

    Raises:
        KeaneFailureError: a length coincidence stopped the walk.
    """
    if depth < 0:
        raise PreconditionError("Depth must be non-negative", depth=depth)
    tracker = ConeTracker(f, _omega_vector(f, omega))
    trace = DiameterTrace([0], [math.inf], [0.0])
    for _ in range(depth):
        tracker.advance()
        trace.steps.append(tracker.steps)
        trace.diameters.append(tracker.diameter)
        trace.logscales.append(tracker.logscale)
    return trace


@dataclass(frozen=True)
class MembershipReport:
    steps: List[int]
    minima: List[float]

    @property
    def member(self) -> bool:
        return all(m >= 0 for m in self.minima)

    def to_dict(self) -> Dict[str, Any]:
        return {'steps': list(self.steps), 'minima': list(self.minima), 'member': self.member}


def cone_membership(f: Aiet, omega, lengths, steps: int | Iterable[int]) -> MembershipReport:
    """Pull ``lengths`` back along gamma(f) with the twisted inverse relations.

    ``lengths`` lies in A_n(gamma, omega)(R_+^d) iff the pulled-back vector
    is non-negative; the minimum coordinate is reported at each sampled n.
    """
    sample = sorted(set(range(steps + 1) if isinstance(steps, int) else steps))
    if not sample or sample[0] < 0:
        raise PreconditionError("Sampled steps must be non-negative", steps=sample)
    omega_vec = _omega_vector(f, omega)
    mode = twisted_product_mode(f, omega_vec)
    if mode is ArithmeticMode.RATIONAL:
        ell = list(alphabet_vector(lengths, f.alphabet, 'lengths'))
        rho = [1] * f.d
    else:
        ell = list(to_vector(alphabet_vector(lengths, f.alphabet, 'lengths'), mode))
        rho = list(exp_vector(to_vector(omega_vec, mode), mode))
    path = rotation_number(f, sample[-1])
    index = f.alphabet.index_map()

    wanted = set(sample)
    minima = []
    if 0 in wanted:
        minima.append(float(min(ell)))
    for n, edge in enumerate(path.edges, start=1):
        w, l = index[edge.winner], index[edge.loser]
        if edge.type == 0:
            ell[w] = ell[w] - rho[l] * ell[l]
        else:
            ell[l] = ell[l] / rho[w]
            ell[w] = ell[w] - ell[l]
        rho[l] = rho[l] * rho[w]
        if n in wanted:
            minima.append(float(min(ell)))
    return MembershipReport(sample, minima)


@dataclass(frozen=True)
class ContractionProfile:
    times: List[int]
    diameters: List[float]
    ratios: List[float]
    kappa_hat: Optional[float]
    window_coefficients: List[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'times': list(self.times),
            'diameters': list(self.diameters),
            'ratios': list(self.ratios),
            'kappa_hat': self.kappa_hat,
            'window_coefficients': list(self.window_coefficients),
        }


def contraction_profile(
    f: Aiet,
    omega,
    trace: DiameterTrace,
    bcc: BccReport,
    *,
    floor: float = 1e-30,
) -> ContractionProfile:
    """Diameter ratios along BCC times spaced at least N apart.

    Diameters below ``floor`` are at working precision and are skipped.
    """
    N = bcc.N
    times: List[int] = []
    for n in bcc.times:
        if n >= len(trace) or not math.isfinite(trace[n]) or trace[n] <= floor:
            continue
        if not times or n - times[-1] >= N:
            times.append(n)
    diameters = [trace[n] for n in times]
    ratios = [b / a for a, b in zip(diameters, diameters[1:]) if a > 0]

    windows: List[float] = []
    if times:
        path = rotation_number(f, times[-1] + N)
        omega_vec = _omega_vector(f, omega)
        mode = twisted_product_mode(f, omega_vec)
        omega_in_mode = omega_vec if mode is ArithmeticMode.RATIONAL else to_vector(omega_vec, mode)
        for n in times:
            windows.append(contraction_coefficient(product_twisted(path, omega_in_mode, n, n + N)))

    kappa_hat = max(ratios) if ratios else None
    logger.info("Contraction profile: %d BCC times, kappa_hat=%s", len(times), kappa_hat)
    return ContractionProfile(times, diameters, ratios, kappa_hat, windows)


__all__ = [
    'ConeTracker',
    'ContractionProfile',
    'DiameterTrace',
    'MembershipReport',
    'cone_diameter_trace',
    'cone_membership',
    'contraction_profile',
    'twisted_product_mode',
]
