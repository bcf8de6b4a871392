"""Shared fixtures and ground-truth constants for the rauzykit tests."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
import pytest

from config.env_loader import reset_config
from iet.aiet import make_aiet, make_iet
from iet.permutation import Permutation
from iet.scalars import ArithmeticMode, parse_vector

FIXTURES_DIR = Path(__file__).parent.parent / "data" / "fixtures"

PHI = (1 + math.sqrt(5)) / 2

# (2 - phi, phi - 1) to 60 digits; the two strings sum to exactly 1
GOLDEN_LENGTHS = [
    "0.381966011250105151795413165634361882279690820194237137864551",
    "0.618033988749894848204586834365638117720309179805762862135449",
]
# 0.1 * (lambda_B, -lambda_A)
GOLDEN_OMEGA = [
    "0.0618033988749894848204586834365638117720309179805762862135449",
    "-0.0381966011250105151795413165634361882279690820194237137864551",
]

# Levy's constant: growth rate of continued-fraction denominators
GAUSS_TOP_EXPONENT = math.pi ** 2 / (12 * math.log(2))
GOLDEN_TOP_EXPONENT = math.log(PHI)

BIG_ZORICH_CAP = 10 ** 15


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch):
    """Every test sees the default RAUZYKIT_* settings."""
    for key in list(os.environ):
        if key.startswith("RAUZYKIT_"):
            monkeypatch.delenv(key, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def rotation_perm() -> Permutation:
    return Permutation.from_rows("A B", "B A")


@pytest.fixture
def symmetric4() -> Permutation:
    return Permutation.from_rows("A B C D", "D C B A")


@pytest.fixture
def golden_iet(rotation_perm):
    """Golden rotation in 80-digit multiprecision."""
    mpmath.mp.dps = max(mpmath.mp.dps, 80)
    mode = ArithmeticMode.MULTIPRECISION
    return make_iet(rotation_perm, parse_vector(GOLDEN_LENGTHS, mode), mode=mode)


@pytest.fixture
def golden_omega():
    mpmath.mp.dps = max(mpmath.mp.dps, 80)
    return list(parse_vector(GOLDEN_OMEGA, ArithmeticMode.MULTIPRECISION))


@pytest.fixture
def golden_float_iet(rotation_perm):
    return make_iet(rotation_perm, [2 - PHI, PHI - 1], mode=ArithmeticMode.FLOAT)


@pytest.fixture
def exact_aiet(rotation_perm):
    """Rational AIET with slopes (1/2, 3/2); the first step has type 0."""
    return make_aiet(
        rotation_perm,
        [Fraction(1, 2), Fraction(1, 2)],
        slopes=[Fraction(1, 2), Fraction(3, 2)],
    )
