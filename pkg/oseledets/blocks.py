"""Zorich blocks as matrix actions.

A block with winner w and loser counts c_l has the classical matrix
B = Id + sum_l c_l E_{w,l}. Right multiplication adds multiples of column w
to the loser columns; the transpose adds multiples of row w to the loser
rows. The elementary factors of a block commute, so the counts suffice.
"""

from __future__ import annotations

import logging
from typing import List, Optional

import numpy as np

from iet.aiet import Aiet
from iet.exceptions import KeaneFailureError, TieError
from induction.walk import RauzyWalk, ZorichBlock

logger = logging.getLogger(__name__)


def zorich_blocks(f: Aiet, count: int, *, zorich_cap: Optional[int] = None) -> List[ZorichBlock]:
    """The first ``count`` Zorich blocks of ``f``'s rotation number.

    Raises:
        KeaneFailureError: induction hit a length coincidence.
    """
    walk = RauzyWalk(f, zorich_cap=zorich_cap)
    blocks = []
    for k in range(count):
        try:
            blocks.append(walk.zorich_block())
        except TieError as exc:
            raise KeaneFailureError(
                "Induction stopped on a length coincidence",
                step=exc.step,
                block=k,
            ) from exc
        walk.normalize()
    return blocks


def apply_block_transpose(rows: np.ndarray, block: ZorichBlock, index: dict) -> None:
    """In place: rows <- B^T rows (works for vectors and row-indexed frames)."""
    w = index[block.winner]
    for loser, count in block.loser_counts.items():
        rows[index[loser]] = rows[index[loser]] + count * rows[w]


def apply_block(matrix: np.ndarray, block: ZorichBlock, index: dict) -> None:
    """In place: matrix <- matrix B."""
    w = index[block.winner]
    for loser, count in block.loser_counts.items():
        matrix[:, index[loser]] = matrix[:, index[loser]] + count * matrix[:, w]


__all__ = ['zorich_blocks', 'apply_block_transpose', 'apply_block']
