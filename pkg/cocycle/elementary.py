"""One-step Rauzy-Veech matrices, classical and twisted.

With winner w and loser l of the step and slopes rho taken before it:

    type 0:  A = Id + rho_l * E_{w,l}
    type 1:  A = Id + E_{w,l} + (rho_w - 1) * E_{l,l}

so that lengths before the step equal A times the lengths after it. At
rho = 1 both reduce to the classical matrix Id + E_{w,l}.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence, Tuple

from cocycle.scaled_matrix import ScaledMatrix, identity_entries
from iet.aiet import alphabet_vector
from iet.exceptions import CocycleOverflowError, PreconditionError
from iet.permutation import Alphabet, Permutation
from iet.scalars import ArithmeticMode, Scalar, exp_scalar, infer_mode, is_zero_vector, to_vector
from induction.walk import RauzyEdge

logger = logging.getLogger(__name__)


def twisted_mode(omega: Sequence[Scalar]) -> ArithmeticMode:
    """Arithmetic used for e^omega: exact only when omega vanishes exactly."""
    mode = infer_mode(omega)
    if mode is ArithmeticMode.RATIONAL and not is_zero_vector(omega):
        return ArithmeticMode.FLOAT
    return mode


def exp_vector(omega: Sequence[Scalar], mode: ArithmeticMode) -> Tuple[Scalar, ...]:
    try:
        return tuple(exp_scalar(w, mode) for w in omega)
    except OverflowError as exc:
        raise CocycleOverflowError("Slope exponent overflows float range", omega_max=float(max(omega))) from exc


def resolve_slopes(
    alphabet: Alphabet,
    omega=None,
    slopes=None,
    mode: Optional[ArithmeticMode] = None,
) -> Tuple[Tuple[Scalar, ...], ArithmeticMode]:
    """Slope vector rho and arithmetic mode from either omega or rho.

    Neither given (or omega exactly zero) means the classical case, returned
    as exact integer ones.
    """
    if omega is not None and slopes is not None:
        raise PreconditionError("Pass either omega or slopes, not both")
    d = len(alphabet)
    if slopes is not None:
        raw = alphabet_vector(slopes, alphabet, 'slopes')
        mode = mode or infer_mode(raw)
        rho = to_vector(raw, mode)
        if any(not r > 0 for r in rho):
            raise PreconditionError("Slopes must be strictly positive")
        return rho, mode
    if omega is None:
        return (1,) * d, mode or ArithmeticMode.RATIONAL
    raw = alphabet_vector(omega, alphabet, 'omega')
    if is_zero_vector(raw) and mode in (None, ArithmeticMode.RATIONAL):
        return (1,) * d, ArithmeticMode.RATIONAL
    mode = mode or twisted_mode(raw)
    return exp_vector(to_vector(raw, mode) if not mode.is_exact else raw, mode), mode


def elementary_entries(perm: Permutation, move_type: int, rho: Sequence[Scalar], mode: ArithmeticMode):
    if move_type not in (0, 1):
        raise PreconditionError(f"Rauzy type must be 0 or 1, got {move_type!r}")
    index = perm.alphabet.index_map()
    w = index[perm.last(move_type)]
    l = index[perm.last(1 - move_type)]
    entries = identity_entries(perm.d, mode)
    if move_type == 0:
        entries[w, l] = rho[l]
    else:
        entries[w, l] = 1
        entries[l, l] = rho[w]
    return entries


def elementary_matrix(
    perm: Permutation,
    move_type: int,
    omega=None,
    *,
    slopes=None,
    mode: Optional[ArithmeticMode] = None,
) -> ScaledMatrix:
    """Twisted elementary matrix A(perm, type, omega).

    Args:
        perm: Permutation the step starts from.
        move_type: 0 when the top interval wins, 1 otherwise.
        omega: Log-slopes before the step; omitted for the classical matrix.
        slopes: rho before the step, instead of omega (exact in rational mode).
        mode: Arithmetic mode override.
    """
    if not perm.is_irreducible():
        raise PreconditionError("Elementary matrices need an irreducible permutation", top=perm.to_rows()[0])
    rho, mode = resolve_slopes(perm.alphabet, omega, slopes, mode)
    return ScaledMatrix.create(perm.alphabet, elementary_entries(perm, move_type, rho, mode), mode, invertible=True)


def classical_matrix(edge: RauzyEdge) -> ScaledMatrix:
    """Integer 0/1 matrix Id + E_{winner,loser} of one edge."""
    return elementary_matrix(edge.perm, edge.type)


__all__ = [
    'elementary_matrix',
    'classical_matrix',
    'resolve_slopes',
    'twisted_mode',
    'exp_vector',
    'elementary_entries',
]
