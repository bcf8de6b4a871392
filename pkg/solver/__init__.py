"""Unique AIETs in a semi-conjugacy class via nested twisted cones."""

from solver.cone import (
    ContractionProfile,
    DiameterTrace,
    MembershipReport,
    cone_diameter_trace,
    cone_membership,
    contraction_profile,
)
from solver.semiconjugacy import verify_semiconjugacy
from solver.uniqueness import SolveReport, solve_unique_aiet

__all__ = [
    'ContractionProfile',
    'DiameterTrace',
    'MembershipReport',
    'SolveReport',
    'cone_diameter_trace',
    'cone_membership',
    'contraction_profile',
    'solve_unique_aiet',
    'verify_semiconjugacy',
]
