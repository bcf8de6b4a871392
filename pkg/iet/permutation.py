"""Alphabets, labelled permutations and Rauzy classes.

A permutation is stored as its two rows: ``top`` lists the letters in the
order of the domain intervals, ``bottom`` in the order of their images.
"""

from __future__ import annotations

import logging
from collections import deque
from functools import lru_cache
from dataclasses import dataclass
from string import ascii_uppercase
from typing import Dict, FrozenSet, Sequence, Tuple

import numpy as np

from iet.exceptions import PreconditionError, ReduciblePermutationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of d >= 2 labels; the order is the matrix index order."""

    symbols: Tuple[str, ...]

    def __post_init__(self) -> None:
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, 'symbols', symbols)
        if len(symbols) < 2:
            raise PreconditionError("An alphabet needs at least two symbols", size=len(symbols))
        if len(set(symbols)) != len(symbols):
            raise PreconditionError("Alphabet symbols must be unique", symbols=list(symbols))
        if any(not s or any(ch.isspace() for ch in s) for s in symbols):
            raise PreconditionError("Alphabet symbols must be non-empty and contain no whitespace")

    @classmethod
    def standard(cls, d: int) -> "Alphabet":
        """``A, B, C, ...`` for d <= 26, ``a1, a2, ...`` beyond."""
        if d <= len(ascii_uppercase):
            return cls(tuple(ascii_uppercase[:d]))
        return cls(tuple(f"a{i}" for i in range(1, d + 1)))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError as exc:
            raise PreconditionError(f"Unknown symbol {symbol!r}", alphabet=list(self.symbols)) from exc

    def index_map(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}


@dataclass(frozen=True)
class Permutation:
    """Pair of rows (pi_0, pi_1) over an alphabet."""

    alphabet: Alphabet
    top: Tuple[str, ...]
    bottom: Tuple[str, ...]

    def __post_init__(self) -> None:
        top = tuple(self.top)
        bottom = tuple(self.bottom)
        object.__setattr__(self, 'top', top)
        object.__setattr__(self, 'bottom', bottom)
        letters = set(self.alphabet.symbols)
        for name, row in (('top', top), ('bottom', bottom)):
            if len(row) != len(letters) or set(row) != letters:
                raise PreconditionError(
                    f"The {name} row is not a bijection onto the alphabet",
                    row=list(row),
                    alphabet=list(self.alphabet.symbols),
                )

    # Construction -------------------------------------------------------------

    @classmethod
    def from_rows(cls, top: str | Sequence[str], bottom: str | Sequence[str],
                  alphabet: Alphabet | None = None) -> "Permutation":
        """Build from two whitespace-separated rows, e.g. ``"A B C"`` / ``"C B A"``.

        Without an explicit alphabet the letters are ordered as in the top row.
        """
        top_row = tuple(top.split()) if isinstance(top, str) else tuple(top)
        bottom_row = tuple(bottom.split()) if isinstance(bottom, str) else tuple(bottom)
        if alphabet is None:
            alphabet = Alphabet(top_row)
        return cls(alphabet, top_row, bottom_row)

    @classmethod
    def symmetric(cls, d: int) -> "Permutation":
        alphabet = Alphabet.standard(d)
        return cls(alphabet, alphabet.symbols, tuple(reversed(alphabet.symbols)))

    # Accessors --------------------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.alphabet)

    def row(self, side: int) -> Tuple[str, ...]:
        return self.top if side == 0 else self.bottom

    def top_position(self, symbol: str) -> int:
        """1-based position of ``symbol`` in the top row."""
        return self.top.index(symbol) + 1

    def bottom_position(self, symbol: str) -> int:
        return self.bottom.index(symbol) + 1

    def last(self, side: int) -> str:
        """alpha_side: the last letter of the top (0) or bottom (1) row."""
        return self.row(side)[-1]

    def monodromy(self) -> Tuple[int, ...]:
        """p = pi_1 o pi_0^{-1} as a tuple: entry j-1 is the bottom position of top position j."""
        bottom_pos = {s: i + 1 for i, s in enumerate(self.bottom)}
        return tuple(bottom_pos[s] for s in self.top)

    def is_irreducible(self) -> bool:
        seen_top: set = set()
        seen_bottom: set = set()
        for k in range(self.d - 1):
            seen_top.add(self.top[k])
            seen_bottom.add(self.bottom[k])
            if seen_top == seen_bottom:
                return False
        return True

    # Rauzy moves ----------------------------------------------------------------------

    def rauzy_move(self, move_type: int) -> "Permutation":
        """Right Rauzy move of type ``move_type``.

        Type 0 (top wins): the bottom-last letter moves right after alpha_0
        in the bottom row. Type 1 (bottom wins): the top-last letter moves
        right after alpha_1 in the top row.
        """
        if move_type not in (0, 1):
            raise PreconditionError(f"Rauzy type must be 0 or 1, got {move_type!r}")
        winner_side = move_type
        loser_side = 1 - move_type
        winner = self.last(winner_side)
        loser_row = list(self.row(loser_side))
        moved = loser_row.pop()
        loser_row.insert(loser_row.index(winner) + 1, moved)
        if loser_side == 0:
            return Permutation(self.alphabet, tuple(loser_row), self.bottom)
        return Permutation(self.alphabet, self.top, tuple(loser_row))

    # Serialization --------------------------------------------------------------------

    def to_rows(self) -> Tuple[str, str]:
        return " ".join(self.top), " ".join(self.bottom)

    def to_dict(self) -> Dict[str, object]:
        top, bottom = self.to_rows()
        return {'alphabet': list(self.alphabet.symbols), 'top': top, 'bottom': bottom}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "Permutation":
        alphabet = Alphabet(tuple(data['alphabet'])) if data.get('alphabet') else None
        return cls.from_rows(data['top'], data['bottom'], alphabet)

    def __str__(self) -> str:
        top, bottom = self.to_rows()
        return f"{top}\n{bottom}"


def validate_permutation(p: Permutation) -> bool:
    """True iff no proper prefix {1..k}, k < d, is invariant under pi_1 o pi_0^{-1}."""
    return p.is_irreducible()


def _require_irreducible(p: Permutation) -> None:
    if not p.is_irreducible():
        top, bottom = p.to_rows()
        raise ReduciblePermutationError("Permutation is reducible", top=top, bottom=bottom)


def genus(p: Permutation) -> int:
    """Genus of the suspension surface of ``p``.

    Uses Veech's permutation sigma on {0, ..., d}: its cycles are the
    singularities (marked points included), and 2g - 2 + s = d - 1.
    """
    _require_irreducible(p)
    d = p.d
    mono = p.monodromy()
    inverse = {value: position + 1 for position, value in enumerate(mono)}

    sigma = [0] * (d + 1)
    sigma[0] = inverse[1] - 1
    for j in range(1, d + 1):
        image = mono[j - 1]
        sigma[j] = d if image == d else inverse[image + 1] - 1

    seen = [False] * (d + 1)
    cycles = 0
    for start in range(d + 1):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]

    g, remainder = divmod(d + 1 - cycles, 2)
    if remainder:
        raise PreconditionError("Inconsistent singularity count", cycles=cycles, d=d)
    return g


def singularity_count(p: Permutation) -> int:
    """Number of cycles of Veech's sigma (singularities, marked points included)."""
    return p.d + 1 - 2 * genus(p)


def rauzy_class(p: Permutation) -> FrozenSet[Permutation]:
    """Breadth-first closure of {p} under both Rauzy moves."""
    _require_irreducible(p)
    seen = {p}
    queue = deque([p])
    while queue:
        current = queue.popleft()
        for move_type in (0, 1):
            neighbour = current.rauzy_move(move_type)
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    logger.debug("Rauzy class of %s has %d vertices", p.to_rows(), len(seen))
    return frozenset(seen)


@lru_cache(maxsize=16)
def _symmetric_class(alphabet: Alphabet) -> Tuple[Permutation, ...]:
    symbols = alphabet.symbols
    start = Permutation(alphabet, symbols, tuple(reversed(symbols)))
    return tuple(sorted(rauzy_class(start), key=Permutation.to_rows))


def random_irreducible_permutation(d: int, rng: np.random.Generator,
                                   alphabet: Alphabet | None = None) -> Permutation:
    """Uniformly random member of the Rauzy class of the symmetric permutation.

    The class has 2^(d-1) - 1 members, so this is meant for small d.
    """
    alphabet = alphabet or Alphabet.standard(d)
    if len(alphabet) != d:
        raise PreconditionError("Alphabet size does not match d", d=d, size=len(alphabet))
    members = _symmetric_class(alphabet)
    return members[int(rng.integers(len(members)))]


__all__ = [
    'Alphabet',
    'Permutation',
    'validate_permutation',
    'genus',
    'singularity_count',
    'rauzy_class',
    'random_irreducible_permutation',
]
