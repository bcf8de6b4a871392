"""Combinatorial semi-conjugacy check: equal rotation numbers up to a depth."""

from __future__ import annotations

import logging
from typing import Optional

from iet.aiet import Aiet, make_aiet
from iet.scalars import Scalar, is_zero_vector
from induction.path import common_prefix_length, paths_equal, rotation_number

logger = logging.getLogger(__name__)


def verify_semiconjugacy(
    f: Aiet,
    lengths,
    omega,
    depth: int,
    *,
    closure_tolerance: Optional[Scalar] = None,
) -> bool:
    """True iff (pi, lengths, omega) and ``f`` share their first ``depth`` Rauzy edges.

    Tie errors from either walk propagate with their step index.
    """
    omega = omega if omega is not None else [0] * f.d
    if is_zero_vector(omega):
        g = make_aiet(f.perm, lengths, tolerance=closure_tolerance)
    else:
        g = make_aiet(f.perm, lengths, omega, tolerance=closure_tolerance)
    reference = rotation_number(f, depth)
    candidate = rotation_number(g, depth)
    agree = paths_equal(reference, candidate, depth)
    if not agree:
        logger.info("Rotation numbers diverge at edge %d of %d", common_prefix_length(reference, candidate), depth)
    return agree


__all__ = ['verify_semiconjugacy']
