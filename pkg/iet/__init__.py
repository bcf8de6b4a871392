"""Core IET/AIET types: alphabets, permutations, maps and the Keane check."""

from iet.aiet import (
    Aiet,
    evaluate,
    evaluate_inverse,
    make_aiet,
    make_iet,
    normalize,
    random_aiet,
    random_iet,
    translations,
)
from iet.keane import KeaneVerdict, check_keane, replay_witness
from iet.permutation import Alphabet, Permutation, genus, rauzy_class, validate_permutation
from iet.scalars import ArithmeticMode

__all__ = [
    'Aiet',
    'Alphabet',
    'ArithmeticMode',
    'KeaneVerdict',
    'Permutation',
    'check_keane',
    'evaluate',
    'evaluate_inverse',
    'genus',
    'make_aiet',
    'make_iet',
    'normalize',
    'random_aiet',
    'random_iet',
    'rauzy_class',
    'replay_witness',
    'translations',
    'validate_permutation',
]
