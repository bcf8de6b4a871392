"""Zorich acceleration: one step groups the maximal run of equal types."""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from iet.aiet import Aiet
from induction.walk import RauzyEdge, RauzyWalk, ZorichBlock

logger = logging.getLogger(__name__)


def zorich_block(f: Aiet, cap: Optional[int] = None) -> Tuple[Aiet, ZorichBlock]:
    walk = RauzyWalk(f, zorich_cap=cap)
    block = walk.zorich_block()
    return walk.current(), block


def zorich_step(f: Aiet, cap: Optional[int] = None) -> Tuple[Aiet, int, List[RauzyEdge]]:
    """Apply R^z to ``f`` where z is the smallest k >= 1 with type(R^k f) != type(f).

    Args:
        f: The AIET to accelerate.
        cap: Maximal accepted z; defaults to ``RAUZYKIT_ZORICH_CAP``.

    Returns:
        (R^z(f), z, edges consumed)
    """
    induced, block = zorich_block(f, cap)
    logger.debug("Zorich step: type %d, winner %s, z=%d", block.type, block.winner, block.length)
    return induced, block.length, list(block.edges())


__all__ = ['zorich_block', 'zorich_step']
