"""Pure one-step Rauzy-Veech induction."""

from __future__ import annotations

from typing import Tuple

from iet.aiet import Aiet
from induction.walk import RauzyEdge, RauzyWalk


def rauzy_type(f: Aiet) -> int:
    """Type of the next induction step of ``f`` (raises on a tie)."""
    return RauzyWalk(f).peek_type()


def rauzy_step(f: Aiet) -> Tuple[Aiet, RauzyEdge]:
    """Induce ``f`` on [0, |l| - min(|I_alpha0|, |f(I_alpha1)|)).

    Returns the unnormalized induced AIET and the edge taken.
    """
    walk = RauzyWalk(f)
    edge = walk.step()
    return walk.current(), edge


__all__ = ['rauzy_type', 'rauzy_step']
