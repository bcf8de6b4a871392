"""Non-negative matrices with an explicit log-scale.

In float and multiprecision modes the stored entries are rescaled by a
power of two so that the largest entry lies in [1, 2); the true matrix is
``entries * exp(logscale)``. Rational mode stores exact entries and keeps
``logscale == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

import mpmath
import numpy as np

from iet.exceptions import CocycleOverflowError, PreconditionError
from iet.permutation import Alphabet
from iet.scalars import ArithmeticMode, format_scalar, parse_scalar, to_mode

LN2 = math.log(2.0)


def _power_of_two_shift(largest, mode: ArithmeticMode) -> int:
    """Exponent s with largest * 2**-s in [1, 2)."""
    if mode is ArithmeticMode.FLOAT:
        _, exponent = math.frexp(float(largest))
    else:
        _, exponent = mpmath.frexp(largest)
    return int(exponent) - 1


def rescale_entries(entries: np.ndarray, mode: ArithmeticMode) -> tuple[np.ndarray, float]:
    """Return (rescaled entries, added logscale)."""
    if mode is ArithmeticMode.RATIONAL:
        return entries, 0.0
    largest = entries.max()
    if not largest > 0:
        return entries, 0.0
    shift = _power_of_two_shift(largest, mode)
    if shift == 0:
        return entries, 0.0
    if mode is ArithmeticMode.FLOAT:
        return np.ldexp(entries, -shift), shift * LN2
    scaled = np.array([mpmath.ldexp(x, -shift) for x in entries.flat], dtype=object).reshape(entries.shape)
    return scaled, shift * LN2


def identity_entries(d: int, mode: ArithmeticMode) -> np.ndarray:
    if mode is ArithmeticMode.FLOAT:
        return np.eye(d)
    one, zero = (1, 0) if mode is ArithmeticMode.RATIONAL else (to_mode(1, mode), to_mode(0, mode))
    entries = np.full((d, d), zero, dtype=object)
    for i in range(d):
        entries[i, i] = one
    return entries


@dataclass(frozen=True, eq=False)
class ScaledMatrix:
    alphabet: Alphabet
    entries: np.ndarray
    mode: ArithmeticMode
    logscale: float = 0.0
    # set for products of elementary matrices, which are invertible
    invertible: bool = False

    @classmethod
    def create(cls, alphabet: Alphabet, entries: np.ndarray, mode: ArithmeticMode,
               logscale: float = 0.0, rescale: bool = True, invertible: bool = False) -> "ScaledMatrix":
        entries = np.array(entries, dtype=float if mode is ArithmeticMode.FLOAT else object)
        if mode is ArithmeticMode.FLOAT and not np.all(np.isfinite(entries)):
            raise CocycleOverflowError("Matrix entries overflowed", logscale=logscale)
        if rescale:
            entries, added = rescale_entries(entries, mode)
            logscale += added
        entries.setflags(write=False)
        return cls(alphabet, entries, mode, logscale, invertible)

    @classmethod
    def identity(cls, alphabet: Alphabet, mode: ArithmeticMode = ArithmeticMode.RATIONAL) -> "ScaledMatrix":
        return cls.create(alphabet, identity_entries(len(alphabet), mode), mode, invertible=True)

    # Algebra -----------------------------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.alphabet)

    def __matmul__(self, other: "ScaledMatrix") -> "ScaledMatrix":
        if self.alphabet != other.alphabet:
            raise PreconditionError("Cannot multiply matrices over different alphabets")
        if self.mode is not other.mode:
            raise PreconditionError(f"Mode mismatch: {self.mode.value} @ {other.mode.value}")
        return ScaledMatrix.create(
            self.alphabet,
            self.entries @ other.entries,
            self.mode,
            self.logscale + other.logscale,
            invertible=self.invertible and other.invertible,
        )

    def to_array(self) -> np.ndarray:
        """True matrix values (may overflow in float mode for huge logscales)."""
        if self.logscale == 0:
            return np.array(self.entries)
        if self.mode is ArithmeticMode.FLOAT:
            return self.entries * math.exp(self.logscale)
        factor = mpmath.exp(self.logscale)
        return np.array([x * factor for x in self.entries.flat], dtype=object).reshape(self.entries.shape)

    def to_float_array(self) -> np.ndarray:
        """Normalized entries as float64 (scale dropped)."""
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def entry(self, row: str, column: str):
        return self.entries[self.alphabet.index(row), self.alphabet.index(column)]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def is_positive(self) -> bool:
        return bool(all(x > 0 for x in self.entries.flat))

    def is_nonnegative(self) -> bool:
        return bool(all(x >= 0 for x in self.entries.flat))

    def determinant(self):
        """Determinant of the stored (normalized) entries; exact in rational mode."""
        if self.mode is ArithmeticMode.FLOAT:
            return float(np.linalg.det(self.entries))
        if self.mode is ArithmeticMode.MULTIPRECISION:
            return mpmath.det(mpmath.matrix(self.entries.tolist()))
        rows = [[Fraction(x) for x in row] for row in self.entries]
        return _fraction_determinant(rows)

    def is_singular(self) -> bool:
        """Exact in rational mode; otherwise only a zero row or column counts.

        Rescaled long products have determinants far below any float
        tolerance while being invertible, so no numeric rank test is made.
        """
        if self.invertible:
            return False
        if self.mode is ArithmeticMode.RATIONAL:
            return self.determinant() == 0
        zero = self.entries == 0
        return bool(zero.all(axis=0).any() or zero.all(axis=1).any())

    def allclose(self, other: "ScaledMatrix", rtol: float = 1e-12) -> bool:
        """Equality of the true matrices: exact in rational mode, relative otherwise."""
        if self.alphabet != other.alphabet:
            return False
        if self.mode is ArithmeticMode.RATIONAL and other.mode is ArithmeticMode.RATIONAL:
            return bool(np.all(self.entries == other.entries))
        a = self.to_float_array()
        b = other.to_float_array() * math.exp(other.logscale - self.logscale)
        return bool(np.allclose(a, b, rtol=rtol, atol=rtol * max(np.abs(a).max(), 1e-300)))

    # Serialization ---------------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            'alphabet': list(self.alphabet.symbols),
            'mode': self.mode.value,
            'entries': [[format_scalar(x) for x in row] for row in self.entries],
            'logscale': self.logscale,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScaledMatrix":
        mode = ArithmeticMode(data['mode'])
        alphabet = Alphabet(tuple(data['alphabet']))
        rows = [[parse_scalar(x, mode) for x in row] for row in data['entries']]
        return cls.create(alphabet, np.array(rows, dtype=float if mode is ArithmeticMode.FLOAT else object),
                          mode, float(data.get('logscale', 0.0)), rescale=False)


def _fraction_determinant(rows: list) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    rows = [list(r) for r in rows]
    for col in range(n):
        pivot: Optional[int] = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


__all__ = ['ScaledMatrix', 'identity_entries', 'rescale_entries', 'LN2']
