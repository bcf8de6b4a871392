"""Scalar arithmetic modes.

Every numeric computation in the toolkit runs in one of three modes:

- ``RATIONAL``: exact ``fractions.Fraction`` (and ``int``) values.
- ``FLOAT``: IEEE binary64 with explicit relative tolerances.
- ``MULTIPRECISION``: ``mpmath.mpf`` values at the configured working
  precision (``RAUZYKIT_MP_DPS`` decimal digits).
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any, Iterable, Sequence

import mpmath
import numpy as np

from config.env_loader import get_config
from iet.exceptions import PreconditionError

Scalar = Any  # Fraction | int | float | mpmath.mpf


class ArithmeticMode(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"
    MULTIPRECISION = "multiprecision"

    @property
    def is_exact(self) -> bool:
        return self is ArithmeticMode.RATIONAL


def _working_dps() -> int:
    # never lowers a precision raised locally with mpmath.workdps
    dps = get_config().get('mp_dps')
    if mpmath.mp.dps < dps:
        mpmath.mp.dps = dps
    return mpmath.mp.dps


def default_tolerance(mode: ArithmeticMode) -> Scalar:
    """Relative tolerance used for ties and comparisons in ``mode``."""
    if mode is ArithmeticMode.RATIONAL:
        return Fraction(0)
    if mode is ArithmeticMode.FLOAT:
        return get_config().get_tolerances()['tie']
    dps = _working_dps()
    return mpmath.mpf(10) ** (-(dps - 10))


def infer_mode(values: Iterable[Scalar]) -> ArithmeticMode:
    """Detect the arithmetic mode from the types of ``values``.

    Any mpf promotes to multiprecision, any float to float; all-rational
    inputs stay rational.
    """
    mode = ArithmeticMode.RATIONAL
    for value in values:
        if isinstance(value, mpmath.mpf):
            return ArithmeticMode.MULTIPRECISION
        if isinstance(value, (float, np.floating)):
            mode = ArithmeticMode.FLOAT
        elif not isinstance(value, (Rational, Integral)):
            raise PreconditionError(f"Unsupported scalar type: {type(value).__name__}")
    return mode


def to_mode(value: Scalar, mode: ArithmeticMode) -> Scalar:
    """Convert ``value`` into the scalar type of ``mode``."""
    if mode is ArithmeticMode.RATIONAL:
        if isinstance(value, (Fraction, int)):
            return Fraction(value)
        if isinstance(value, mpmath.mpf):
            raise PreconditionError("Cannot convert a multiprecision value to an exact rational")
        if isinstance(value, str):
            return Fraction(value)
        # floats are binary rationals; conversion is exact
        return Fraction(float(value))
    if mode is ArithmeticMode.FLOAT:
        result = float(value)
        if not math.isfinite(result):
            raise PreconditionError(f"Non-finite float scalar: {value!r}")
        return result
    _working_dps()
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def to_vector(values: Iterable[Scalar], mode: ArithmeticMode) -> tuple:
    return tuple(to_mode(v, mode) for v in values)


def parse_scalar(text: str, mode: ArithmeticMode) -> Scalar:
    """Parse ``"p/q"``, integer or decimal text into a scalar of ``mode``.

    Decimal strings are exact in rational mode (``"0.4"`` is ``2/5``).
    """
    text = str(text).strip()
    if not text:
        raise PreconditionError("Empty scalar string")
    try:
        exact = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        exact = None
        if mode is not ArithmeticMode.MULTIPRECISION:
            raise PreconditionError(f"Cannot parse scalar {text!r}") from exc
    if mode is ArithmeticMode.RATIONAL:
        return exact
    if mode is ArithmeticMode.FLOAT:
        return float(exact)
    _working_dps()
    if exact is not None and '/' in text:
        return mpmath.mpf(exact.numerator) / exact.denominator
    try:
        return mpmath.mpf(text)
    except (ValueError, TypeError) as exc:
        raise PreconditionError(f"Cannot parse scalar {text!r}") from exc


def format_scalar(value: Scalar) -> str:
    """Render a scalar as a string that ``parse_scalar`` reads back."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, _working_dps())
    return repr(float(value))


def parse_vector(texts: Sequence[str], mode: ArithmeticMode) -> tuple:
    return tuple(parse_scalar(t, mode) for t in texts)


def format_vector(values: Iterable[Scalar]) -> list:
    return [format_scalar(v) for v in values]


def is_zero_vector(values: Iterable[Scalar]) -> bool:
    return all(v == 0 for v in values)


def exp_scalar(value: Scalar, mode: ArithmeticMode) -> Scalar:
    """``e**value`` in ``mode``; exact zero maps to exact one."""
    if value == 0:
        return Fraction(1) if mode is ArithmeticMode.RATIONAL else to_mode(1, mode)
    if mode is ArithmeticMode.RATIONAL:
        raise PreconditionError("exp of a nonzero rational is not rational; use slopes= or float mode")
    if mode is ArithmeticMode.FLOAT:
        return math.exp(float(value))
    _working_dps()
    return mpmath.exp(value)


def log_abs(value: Scalar) -> float:
    """Natural log of ``|value|`` as a float, without overflowing huge rationals."""
    if value == 0:
        return -math.inf
    if isinstance(value, (Fraction, int)):
        q = Fraction(value)
        return math.log(abs(q.numerator)) - math.log(q.denominator)
    if isinstance(value, mpmath.mpf):
        return float(mpmath.log(abs(value)))
    return math.log(abs(float(value)))


def log_scalar(value: Scalar, mode: ArithmeticMode) -> Scalar:
    """Natural log in the precision of ``mode`` (floats for rational input)."""
    if mode is ArithmeticMode.MULTIPRECISION:
        _working_dps()
        return mpmath.log(value)
    return log_abs(value)


def sqrt_scalar(value: Scalar, mode: ArithmeticMode) -> Scalar:
    if mode is ArithmeticMode.MULTIPRECISION:
        _working_dps()
        return mpmath.sqrt(value)
    return math.sqrt(float(value))


def floor_scalar(value: Scalar) -> int:
    if isinstance(value, mpmath.mpf):
        return int(mpmath.floor(value))
    return math.floor(value)


def zeros(d: int, mode: ArithmeticMode) -> list:
    zero = to_mode(0, mode)
    return [zero] * d


def ones(d: int, mode: ArithmeticMode) -> list:
    one = to_mode(1, mode)
    return [one] * d


def array(values: Iterable[Scalar], mode: ArithmeticMode) -> np.ndarray:
    """numpy view of ``values``: float64 in float mode, object dtype otherwise."""
    if mode is ArithmeticMode.FLOAT:
        return np.array([float(v) for v in values], dtype=float)
    return np.array(list(values), dtype=object)


def scalar_sum(values: Iterable[Scalar], mode: ArithmeticMode) -> Scalar:
    if mode is ArithmeticMode.FLOAT:
        return math.fsum(float(v) for v in values)
    if mode is ArithmeticMode.MULTIPRECISION:
        _working_dps()
        return mpmath.fsum(values)
    return sum(values, Fraction(0))


def to_float(value: Scalar) -> float:
    return float(value)


__all__ = [
    'Scalar',
    'ArithmeticMode',
    'default_tolerance',
    'infer_mode',
    'to_mode',
    'to_vector',
    'parse_scalar',
    'format_scalar',
    'parse_vector',
    'format_vector',
    'is_zero_vector',
    'exp_scalar',
    'log_abs',
    'log_scalar',
    'sqrt_scalar',
    'floor_scalar',
    'zeros',
    'ones',
    'array',
    'scalar_sum',
    'to_float',
]
