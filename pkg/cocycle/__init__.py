"""Classical and twisted Rauzy-Veech cocycles."""

from cocycle.elementary import classical_matrix, elementary_matrix
from cocycle.matrix_lemma import MatrixLemmaReport, verify_matrix_lemma
from cocycle.products import ProductAccumulator, accelerated_product, product_classical, product_twisted
from cocycle.scaled_matrix import ScaledMatrix
from cocycle.trajectory import SlopeTrajectory, slope_products, slope_trajectory

__all__ = [
    'MatrixLemmaReport',
    'ProductAccumulator',
    'ScaledMatrix',
    'SlopeTrajectory',
    'accelerated_product',
    'classical_matrix',
    'elementary_matrix',
    'product_classical',
    'product_twisted',
    'slope_products',
    'slope_trajectory',
    'verify_matrix_lemma',
]
