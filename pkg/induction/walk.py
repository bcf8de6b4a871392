"""Rauzy-Veech induction cursor.

``RauzyWalk`` owns a mutable copy of (pi, lengths, slopes) and advances it
one elementary step at a time, or one Zorich block at a time. It is a
single-consumer iterator; independent walks share nothing.

Conventions for right induction with alpha_0 = top-last and
alpha_1 = bottom-last letter:

- type 0 when l[alpha_0] > rho[alpha_1] * l[alpha_1]: winner alpha_0,
  loser alpha_1; l[alpha_0] -= rho[alpha_1] * l[alpha_1] and
  rho[alpha_1] *= rho[alpha_0].
- type 1 otherwise: winner alpha_1, loser alpha_0;
  l[alpha_0] /= rho[alpha_1], l[alpha_1] -= l[alpha_0] (new value) and
  rho[alpha_0] *= rho[alpha_1].
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import chain, repeat
from typing import Dict, Iterator, List, Optional, Tuple

from config.env_loader import get_config
from iet.aiet import Aiet, closure_residual
from iet.exceptions import CapExceededError, DegenerateLengthsError, TieError
from iet.permutation import Permutation
from iet.scalars import ArithmeticMode, Scalar, default_tolerance, floor_scalar, scalar_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RauzyEdge:
    """One elementary step: the permutation it starts from and its type."""

    perm: Permutation
    type: int
    winner: str
    loser: str

    def to_dict(self) -> Dict[str, object]:
        return {'type': self.type, 'winner': self.winner, 'loser': self.loser}

    def same_step(self, other: "RauzyEdge") -> bool:
        return self.perm == other.perm and self.type == other.type


@dataclass(frozen=True)
class ZorichBlock:
    """A maximal run of same-type steps.

    The edges are ``loop_edges`` repeated ``loops`` times followed by
    ``tail_edges``. Its classical matrix is Id + sum_l count_l E_{winner,l}.
    """

    type: int
    winner: str
    loop_edges: Tuple[RauzyEdge, ...]
    loops: int
    tail_edges: Tuple[RauzyEdge, ...]
    loser_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.loop_edges) * self.loops + len(self.tail_edges)

    def edges(self) -> Iterator[RauzyEdge]:
        return chain(chain.from_iterable(repeat(self.loop_edges, self.loops)), self.tail_edges)


class RauzyWalk:
    """Mutable induction state for one AIET."""

    def __init__(self, f: Aiet, *, tie_tolerance: Optional[Scalar] = None,
                 zorich_cap: Optional[int] = None) -> None:
        self.alphabet = f.alphabet
        self.mode = f.mode
        self._index = self.alphabet.index_map()
        self.top: List[str] = list(f.perm.top)
        self.bottom: List[str] = list(f.perm.bottom)
        self.lengths: List[Scalar] = list(f.lengths)
        self.slopes: List[Scalar] = list(f.slopes)
        self.unit_slopes = f.is_iet
        self.steps = 0
        if tie_tolerance is None:
            tie_tolerance = default_tolerance(self.mode)
        self.tie_tolerance = tie_tolerance
        self.zorich_cap = zorich_cap or get_config().get('zorich_cap')

    # State ----------------------------------------------------------------------------

    @property
    def permutation(self) -> Permutation:
        return Permutation(self.alphabet, tuple(self.top), tuple(self.bottom))

    def current(self) -> Aiet:
        return Aiet(
            self.permutation,
            tuple(self.lengths),
            tuple(self.slopes),
            self.mode,
            closure_residual(self.lengths, self.slopes, self.mode),
        )

    def total_length(self) -> Scalar:
        return scalar_sum(self.lengths, self.mode)

    def normalize(self) -> None:
        total = self.total_length()
        self.lengths = [l / total for l in self.lengths]

    # Elementary steps -------------------------------------------------------------------

    def _is_tie(self, top_len: Scalar, bottom_len: Scalar) -> bool:
        if self.mode is ArithmeticMode.RATIONAL:
            return top_len == bottom_len
        return abs(top_len - bottom_len) <= self.tie_tolerance * max(top_len, bottom_len)

    def peek_type(self) -> int:
        """Type of the next step without taking it."""
        a0 = self._index[self.top[-1]]
        a1 = self._index[self.bottom[-1]]
        top_len = self.lengths[a0]
        bottom_len = self.slopes[a1] * self.lengths[a1]
        if self._is_tie(top_len, bottom_len):
            raise TieError(
                "Length coincidence: Keane condition fails at this step",
                step=self.steps,
                top_letter=self.top[-1],
                bottom_letter=self.bottom[-1],
            )
        return 0 if top_len > bottom_len else 1

    def _check_length(self, i: int) -> None:
        value = self.lengths[i]
        finite = True
        if self.mode is ArithmeticMode.FLOAT:
            finite = math.isfinite(value)
        if not finite or not value > 0:
            raise DegenerateLengthsError(
                "Non-positive length produced by induction",
                step=self.steps,
                symbol=self.alphabet.symbols[i],
            )

    def step(self) -> RauzyEdge:
        """Take one elementary step and return the edge."""
        move_type = self.peek_type()
        perm = self.permutation
        a0_letter, a1_letter = self.top[-1], self.bottom[-1]
        a0, a1 = self._index[a0_letter], self._index[a1_letter]

        if move_type == 0:
            self.lengths[a0] = self.lengths[a0] - self.slopes[a1] * self.lengths[a1]
            self.slopes[a1] = self.slopes[a1] * self.slopes[a0]
            self._check_length(a0)
            moved = self.bottom.pop()
            self.bottom.insert(self.bottom.index(a0_letter) + 1, moved)
            edge = RauzyEdge(perm, 0, a0_letter, a1_letter)
        else:
            shrunk = self.lengths[a0] / self.slopes[a1]
            self.lengths[a1] = self.lengths[a1] - shrunk
            self.lengths[a0] = shrunk
            self.slopes[a0] = self.slopes[a0] * self.slopes[a1]
            self._check_length(a1)
            moved = self.top.pop()
            self.top.insert(self.top.index(a1_letter) + 1, moved)
            edge = RauzyEdge(perm, 1, a1_letter, a0_letter)

        self.steps += 1
        return edge

    def __iter__(self) -> "RauzyWalk":
        return self

    def __next__(self) -> RauzyEdge:
        return self.step()

    # Zorich blocks ------------------------------------------------------------------------

    def _loop_edges(self, move_type: int) -> Tuple[RauzyEdge, ...]:
        """Edges of one full loop from the current permutation (lengths untouched)."""
        perm = self.permutation
        winner = perm.last(move_type)
        edges = []
        while True:
            loser = perm.last(1 - move_type)
            edges.append(RauzyEdge(perm, move_type, winner, loser))
            perm = perm.rauzy_move(move_type)
            if perm == self.permutation:
                return tuple(edges)

    def zorich_block(self, cap: Optional[int] = None) -> ZorichBlock:
        """Advance through the maximal run of steps sharing the current type.

        For IETs complete loops are removed with one floor division, the
        permutation being unchanged by a full loop.

        Raises:
            CapExceededError: more than ``cap`` steps of the same type.
        """
        cap = cap or self.zorich_cap
        move_type = self.peek_type()
        winner_letter = self.bottom[-1] if move_type else self.top[-1]
        winner = self._index[winner_letter]
        counts: Dict[str, int] = {}
        loop_edges: Tuple[RauzyEdge, ...] = ()
        loops = 0

        if self.unit_slopes:
            loser_row = self.top if move_type else self.bottom
            loop_letters = loser_row[loser_row.index(winner_letter) + 1:]
            loop_length = scalar_sum([self.lengths[self._index[s]] for s in loop_letters], self.mode)
            loops = floor_scalar(self.lengths[winner] / loop_length)
            if loops >= 1:
                remainder = self.lengths[winner] - loops * loop_length
                if self._is_tie(remainder + loop_length, loop_length):
                    loops -= 1
            if loops * len(loop_letters) > cap:
                raise CapExceededError(
                    "Zorich block longer than the cap",
                    step=self.steps,
                    cap=cap,
                    type=move_type,
                )
            if loops >= 1:
                loop_edges = self._loop_edges(move_type)
                self.lengths[winner] = self.lengths[winner] - loops * loop_length
                self._check_length(winner)
                for s in loop_letters:
                    counts[s] = loops
                self.steps += loops * len(loop_edges)

        tail: List[RauzyEdge] = []
        z = loops * len(loop_edges)
        while True:
            if z >= cap:
                if self.peek_type() == move_type:
                    raise CapExceededError(
                        "Zorich block longer than the cap",
                        step=self.steps,
                        cap=cap,
                        type=move_type,
                    )
                break
            if z > 0 and self.peek_type() != move_type:
                break
            edge = self.step()
            tail.append(edge)
            counts[edge.loser] = counts.get(edge.loser, 0) + 1
            z += 1

        return ZorichBlock(move_type, winner_letter, loop_edges, loops, tuple(tail), counts)


__all__ = ['RauzyEdge', 'ZorichBlock', 'RauzyWalk']
