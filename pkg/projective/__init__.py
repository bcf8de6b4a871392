"""Hilbert projective metric and contraction coefficients."""

from projective.hilbert import (
    ProjectiveDiagnostics,
    ProjectivePoint,
    contraction_coefficient,
    hilbert_distance,
    image_diameter,
    project,
    sampled_contraction_ratio,
    uniform_contraction_bound,
)

__all__ = [
    'ProjectiveDiagnostics',
    'ProjectivePoint',
    'contraction_coefficient',
    'hilbert_distance',
    'image_diameter',
    'project',
    'sampled_contraction_ratio',
    'uniform_contraction_bound',
]
