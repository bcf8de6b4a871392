"""Rauzy paths: prefixes of the combinatorial rotation number."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Tuple

from iet.aiet import Aiet
from iet.exceptions import InsufficientLengthError, PreconditionError, ReportIOError
from iet.permutation import Permutation
from induction.walk import RauzyEdge, RauzyWalk

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RauzyPath:
    start: Permutation
    edges: Tuple[RauzyEdge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'edges', tuple(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def types(self) -> Tuple[int, ...]:
        return tuple(edge.type for edge in self.edges)

    @property
    def end(self) -> Permutation:
        if not self.edges:
            return self.start
        last = self.edges[-1]
        return last.perm.rauzy_move(last.type)

    @property
    def zorich_blocks(self) -> List[Tuple[int, int, int]]:
        """Run-length encoding of types as (type, first index, run length)."""
        blocks: List[Tuple[int, int, int]] = []
        for i, move_type in enumerate(self.types):
            if blocks and blocks[-1][0] == move_type:
                t, first, run = blocks[-1]
                blocks[-1] = (t, first, run + 1)
            else:
                blocks.append((move_type, i, 1))
        return blocks

    def zorich_times(self) -> List[int]:
        """z_0 = 0 < z_1 < ...: indices where the type changes.

        The end of the last run is unknown on a finite prefix, so it is not
        a Zorich time unless the run is followed by a change.
        """
        return [0] + [first for _, first, _ in self.zorich_blocks[1:]]

    def winners(self) -> List[str]:
        return [edge.winner for edge in self.edges]

    def is_composable(self) -> bool:
        current = self.start
        for edge in self.edges:
            if edge.perm != current:
                return False
            current = current.rauzy_move(edge.type)
        return True

    def is_infinity_complete(self) -> bool:
        """Every symbol appears as a winner on this prefix."""
        return set(self.winners()) == set(self.start.alphabet.symbols)

    def prefix(self, n: int) -> "RauzyPath":
        if n > len(self.edges):
            raise InsufficientLengthError("Path prefix longer than the path", requested=n, length=len(self))
        return RauzyPath(self.start, self.edges[:n])

    # Serialization ---------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {'start': self.start.to_dict(), 'edges': [edge.to_dict() for edge in self.edges]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RauzyPath":
        start = Permutation.from_dict(data['start'])
        return cls(start, tuple(_replay(start, data['edges'])))


def _replay(start: Permutation, records: Iterable[Dict[str, Any]]) -> Iterator[RauzyEdge]:
    perm = start
    for index, record in enumerate(records):
        move_type = int(record['type'])
        winner, loser = perm.last(move_type), perm.last(1 - move_type)
        if record.get('winner', winner) != winner or record.get('loser', loser) != loser:
            raise PreconditionError("Edge record is not composable with its predecessor", index=index)
        yield RauzyEdge(perm, move_type, winner, loser)
        perm = perm.rauzy_move(move_type)


def write_edges_jsonl(path: str | Path, start: Permutation, edges: Iterable[RauzyEdge]) -> int:
    """Stream a path to disk: a header line with the start, then one edge per line."""
    count = 0
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(json.dumps({'start': start.to_dict()}) + '\n')
            for edge in edges:
                handle.write(json.dumps(edge.to_dict()) + '\n')
                count += 1
    except OSError as exc:
        raise ReportIOError(f"Cannot write path to {path}: {exc}", path=str(path)) from exc
    return count


def read_edges_jsonl(path: str | Path) -> RauzyPath:
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            header = json.loads(handle.readline())
            records = [json.loads(line) for line in handle if line.strip()]
    except OSError as exc:
        raise ReportIOError(f"Cannot read path from {path}: {exc}", path=str(path)) from exc
    start = Permutation.from_dict(header['start'])
    return RauzyPath(start, tuple(_replay(start, records)))


# Operations --------------------------------------------------------------------------


def rotation_number(f: Aiet, n: int) -> RauzyPath:
    """First ``n`` edges of the combinatorial rotation number of ``f``.

    Tie errors carry the failing step index in ``details['step']``.
    """
    if n < 0:
        raise PreconditionError("Path length must be non-negative", n=n)
    walk = RauzyWalk(f)
    edges = [walk.step() for _ in range(n)]
    return RauzyPath(f.perm, tuple(edges))


def common_prefix_length(a: RauzyPath, b: RauzyPath) -> int:
    if a.start != b.start:
        return 0
    count = 0
    for left, right in zip(a.edges, b.edges):
        if not left.same_step(right):
            break
        count += 1
    return count


def paths_equal(a: RauzyPath, b: RauzyPath, n: int) -> bool:
    """True iff the first ``n`` edges (permutation and type) coincide."""
    if len(a) < n or len(b) < n:
        raise InsufficientLengthError(
            "Paths shorter than the comparison depth",
            requested=n,
            lengths=[len(a), len(b)],
        )
    if a.start != b.start:
        return False
    return all(x.same_step(y) for x, y in zip(a.edges[:n], b.edges[:n]))


__all__ = [
    'RauzyPath',
    'rotation_number',
    'paths_equal',
    'common_prefix_length',
    'write_edges_jsonl',
    'read_edges_jsonl',
]
