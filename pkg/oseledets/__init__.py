"""Lyapunov spectrum, central-stable subspace and the bounded central condition."""

from oseledets.bcc import BccReport, bcc_monitor
from oseledets.blocks import zorich_blocks
from oseledets.spectrum import SpectrumEstimate, lyapunov_spectrum
from oseledets.subspace import GrowthRate, SubspaceEstimate, estimate_ecs, growth_rate, top_growth_rate

__all__ = [
    'BccReport',
    'GrowthRate',
    'SpectrumEstimate',
    'SubspaceEstimate',
    'bcc_monitor',
    'estimate_ecs',
    'growth_rate',
    'lyapunov_spectrum',
    'top_growth_rate',
    'zorich_blocks',
]
