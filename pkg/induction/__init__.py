"""Rauzy-Veech induction, Zorich acceleration and rotation numbers."""

from induction.path import RauzyPath, common_prefix_length, paths_equal, rotation_number
from induction.rauzy import rauzy_step, rauzy_type
from induction.walk import RauzyEdge, RauzyWalk, ZorichBlock
from induction.zorich import zorich_block, zorich_step

__all__ = [
    'RauzyEdge',
    'RauzyPath',
    'RauzyWalk',
    'ZorichBlock',
    'common_prefix_length',
    'paths_equal',
    'rauzy_step',
    'rauzy_type',
    'rotation_number',
    'zorich_block',
    'zorich_step',
]
