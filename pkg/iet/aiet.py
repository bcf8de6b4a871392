"""Affine interval exchange transformations.

An Aiet is the triple (pi, lengths, slopes) with slopes rho = e^omega.
Lengths and slopes are stored in alphabet order. The map sends the top
interval I_alpha = [a_alpha, a_alpha + l_alpha) linearly onto the image
block [c_alpha, c_alpha + rho_alpha * l_alpha), image blocks being laid
out in bottom-row order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from iet.exceptions import (
    ClosureViolationError,
    NonPositiveLengthError,
    OutOfDomainError,
    PreconditionError,
)
from iet.permutation import Alphabet, Permutation, _require_irreducible
from iet.scalars import (
    ArithmeticMode,
    Scalar,
    default_tolerance,
    exp_scalar,
    format_vector,
    infer_mode,
    log_scalar,
    scalar_sum,
    to_mode,
    to_vector,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Aiet:
    perm: Permutation
    lengths: Tuple[Scalar, ...]
    slopes: Tuple[Scalar, ...]
    mode: ArithmeticMode
    closure_residual: Scalar

    @property
    def alphabet(self) -> Alphabet:
        return self.perm.alphabet

    @property
    def d(self) -> int:
        return self.perm.d

    @property
    def total_length(self) -> Scalar:
        return scalar_sum(self.lengths, self.mode)

    @property
    def logslopes(self) -> Tuple[Scalar, ...]:
        """omega = log(rho); floats for rational slopes, exact zero for unit slopes."""
        return tuple(
            Fraction(0) if rho == 1 and self.mode is ArithmeticMode.RATIONAL else log_scalar(rho, self.mode)
            for rho in self.slopes
        )

    @property
    def is_iet(self) -> bool:
        return all(rho == 1 for rho in self.slopes)

    @property
    def is_normalized(self) -> bool:
        total = self.total_length
        if self.mode is ArithmeticMode.RATIONAL:
            return total == 1
        return abs(total - 1) <= default_tolerance(self.mode)

    def length(self, symbol: str) -> Scalar:
        return self.lengths[self.alphabet.index(symbol)]

    def slope(self, symbol: str) -> Scalar:
        return self.slopes[self.alphabet.index(symbol)]

    def image_length(self, symbol: str) -> Scalar:
        i = self.alphabet.index(symbol)
        return self.slopes[i] * self.lengths[i]

    def to_dict(self) -> Dict[str, object]:
        return {
            'permutation': self.perm.to_dict(),
            'mode': self.mode.value,
            'lengths': format_vector(self.lengths),
            'slopes': format_vector(self.slopes),
            'closure_residual': format_vector([self.closure_residual])[0],
        }


def alphabet_vector(values, alphabet: Alphabet, name: str) -> list:
    if isinstance(values, Mapping):
        missing = [s for s in alphabet if s not in values]
        if missing:
            raise PreconditionError(f"{name} missing symbols {missing}")
        return [values[s] for s in alphabet]
    values = list(values)
    if len(values) != len(alphabet):
        raise PreconditionError(
            f"{name} has {len(values)} entries for an alphabet of size {len(alphabet)}",
            expected=len(alphabet),
            got=len(values),
        )
    return values


def closure_residual(lengths: Sequence[Scalar], slopes: Sequence[Scalar], mode: ArithmeticMode) -> Scalar:
    """|<l, rho> - |l|_1|."""
    image = scalar_sum([rho * l for rho, l in zip(slopes, lengths)], mode)
    return abs(image - scalar_sum(lengths, mode))


def make_aiet(
    p: Permutation,
    lengths,
    logslopes=None,
    tolerance: Optional[Scalar] = None,
    *,
    slopes=None,
    mode: Optional[ArithmeticMode] = None,
) -> Aiet:
    """Construct and validate an AIET.

    Args:
        p: Irreducible permutation.
        lengths: Positive lengths, in alphabet order or keyed by symbol.
        logslopes: omega; omitted (with ``slopes``) means an IET.
        tolerance: Absolute closure tolerance. Defaults to exact in rational
            mode and ``tie_tolerance * |l|_1`` otherwise.
        slopes: rho = e^omega given directly; required for exact
            non-trivial slopes in rational mode.
        mode: Arithmetic mode; inferred from the inputs when omitted.

    Returns:
        The validated Aiet, with its closure residual recorded.
    """
    _require_irreducible(p)
    if logslopes is not None and slopes is not None:
        raise PreconditionError("Pass either logslopes or slopes, not both")

    raw_lengths = alphabet_vector(lengths, p.alphabet, 'lengths')
    raw_slopes = alphabet_vector(slopes, p.alphabet, 'slopes') if slopes is not None else None
    raw_omega = alphabet_vector(logslopes, p.alphabet, 'logslopes') if logslopes is not None else None

    if mode is None:
        raw_values = raw_lengths + (raw_slopes or []) + (raw_omega or [])
        mode = infer_mode(raw_values)
        if mode is ArithmeticMode.RATIONAL and raw_omega is not None and any(w != 0 for w in raw_omega):
            mode = ArithmeticMode.FLOAT

    ell = to_vector(raw_lengths, mode)
    bad = [s for s, l in zip(p.alphabet, ell) if not l > 0]
    if bad:
        raise NonPositiveLengthError("Lengths must be strictly positive", symbols=bad)

    if raw_slopes is not None:
        rho = to_vector(raw_slopes, mode)
        if any(not r > 0 for r in rho):
            raise PreconditionError("Slopes must be strictly positive")
    elif raw_omega is not None:
        rho = tuple(exp_scalar(to_mode(w, mode) if mode is not ArithmeticMode.RATIONAL else w, mode)
                    for w in raw_omega)
    else:
        rho = to_vector([1] * p.d, mode)

    residual = closure_residual(ell, rho, mode)
    total = scalar_sum(ell, mode)
    if tolerance is None:
        tolerance = default_tolerance(mode) * total
    if residual > tolerance:
        raise ClosureViolationError(
            "Total image length differs from domain length",
            residual=float(residual),
            tolerance=float(tolerance),
        )
    return Aiet(p, ell, rho, mode, residual)


def make_iet(p: Permutation, lengths, *, mode: Optional[ArithmeticMode] = None) -> Aiet:
    return make_aiet(p, lengths, mode=mode)


# Geometry -----------------------------------------------------------------------


def _starts(row: Sequence[str], sizes: Mapping[str, Scalar], zero: Scalar) -> Dict[str, Scalar]:
    starts = {}
    position = zero
    for symbol in row:
        starts[symbol] = position
        position = position + sizes[symbol]
    return starts


def _top_sizes(f: Aiet) -> Dict[str, Scalar]:
    return dict(zip(f.alphabet.symbols, f.lengths))


def _image_sizes(f: Aiet) -> Dict[str, Scalar]:
    return {s: rho * l for s, rho, l in zip(f.alphabet.symbols, f.slopes, f.lengths)}


def domain_starts(f: Aiet) -> Dict[str, Scalar]:
    """a_alpha: left endpoint of each top interval."""
    return _starts(f.perm.top, _top_sizes(f), to_mode(0, f.mode))


def image_starts(f: Aiet) -> Dict[str, Scalar]:
    """c_alpha: left endpoint of each image block."""
    return _starts(f.perm.bottom, _image_sizes(f), to_mode(0, f.mode))


def domain_singularities(f: Aiet) -> List[Tuple[str, Scalar]]:
    """Interior discontinuities of f: (symbol, a_symbol) for top positions 2..d."""
    starts = domain_starts(f)
    return [(s, starts[s]) for s in f.perm.top[1:]]


def range_singularities(f: Aiet) -> List[Tuple[str, Scalar]]:
    """Interior discontinuities of f^-1: (symbol, c_symbol) for bottom positions 2..d."""
    starts = image_starts(f)
    return [(s, starts[s]) for s in f.perm.bottom[1:]]


def in_which_interval(f: Aiet, x: Scalar) -> str:
    x = _check_domain(f, x)
    position = to_mode(0, f.mode)
    for symbol in f.perm.top:
        position = position + f.length(symbol)
        if x < position:
            return symbol
    return f.perm.top[-1]


def _check_domain(f: Aiet, x: Scalar) -> Scalar:
    x = to_mode(x, f.mode)
    total = f.total_length
    if x < 0 or x >= total:
        raise OutOfDomainError(f"{x} does not lie in [0, {total})", point=str(x))
    return x


def evaluate(f: Aiet, x: Scalar) -> Scalar:
    """f(x) for the right-continuous piecewise-linear map of ``f``."""
    x = _check_domain(f, x)
    symbol = in_which_interval(f, x)
    a = domain_starts(f)[symbol]
    c = image_starts(f)[symbol]
    return c + f.slope(symbol) * (x - a)


def evaluate_inverse(f: Aiet, y: Scalar) -> Scalar:
    y = _check_domain(f, y)
    image = image_starts(f)
    sizes = _image_sizes(f)
    symbol = f.perm.bottom[-1]
    for candidate in f.perm.bottom:
        if y < image[candidate] + sizes[candidate]:
            symbol = candidate
            break
    return domain_starts(f)[symbol] + (y - image[symbol]) / f.slope(symbol)


def translations(f: Aiet) -> Tuple[Scalar, ...]:
    """Translation c_alpha - a_alpha of each interval, in alphabet order (IETs only)."""
    if not f.is_iet:
        raise PreconditionError("Translations are defined for IETs only")
    top = domain_starts(f)
    bottom = image_starts(f)
    return tuple(bottom[s] - top[s] for s in f.alphabet)


def normalize(f: Aiet) -> Aiet:
    """Rescale to |l|_1 = 1; slopes unchanged."""
    total = f.total_length
    lengths = tuple(l / total for l in f.lengths)
    return Aiet(f.perm, lengths, f.slopes, f.mode, f.closure_residual / total)


# Sampling -----------------------------------------------------------------------------


def _big_integer(rng: np.random.Generator, words: int) -> int:
    value = 0
    for _ in range(words):
        value = (value << 62) | int(rng.integers(0, 2 ** 62))
    return value + 1


def random_lengths(d: int, rng: np.random.Generator, mode: ArithmeticMode, *, words: int = 8) -> tuple:
    """Random normalized length vector.

    Rational lengths use numerators of ``62 * words`` bits so that random
    rational IETs stay generic for a long stretch of induction.
    """
    if mode is ArithmeticMode.FLOAT:
        raw = rng.random(d) + 1e-3
        return tuple(float(v) for v in raw / raw.sum())
    numerators = [_big_integer(rng, words) for _ in range(d)]
    total = sum(numerators)
    exact = [Fraction(n, total) for n in numerators]
    return to_vector(exact, mode)


def random_iet(p: Permutation, rng: np.random.Generator,
               mode: ArithmeticMode = ArithmeticMode.RATIONAL, **kwargs) -> Aiet:
    return make_aiet(p, random_lengths(p.d, rng, mode, **kwargs), mode=mode)


def random_aiet(p: Permutation, rng: np.random.Generator, *, denominator: int = 10 ** 6,
                max_slope: int = 8) -> Aiet:
    """Random exact rational AIET; slopes are rescaled so closure holds exactly."""
    lengths = [Fraction(int(rng.integers(1, denominator)), denominator) for _ in range(p.d)]
    raw = [Fraction(int(rng.integers(1, max_slope + 1)), int(rng.integers(1, max_slope + 1)))
           for _ in range(p.d)]
    scale = sum(lengths) / sum(r * l for r, l in zip(raw, lengths))
    slopes = [r * scale for r in raw]
    return make_aiet(p, lengths, slopes=slopes, mode=ArithmeticMode.RATIONAL)


__all__ = [
    'Aiet',
    'make_aiet',
    'make_iet',
    'closure_residual',
    'evaluate',
    'evaluate_inverse',
    'in_which_interval',
    'domain_starts',
    'image_starts',
    'domain_singularities',
    'range_singularities',
    'translations',
    'normalize',
    'random_lengths',
    'random_iet',
    'random_aiet',
]
