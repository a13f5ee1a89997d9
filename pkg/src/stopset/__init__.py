"""Stopping-set analysis of binary parity-check matrices and ensembles.

Subpackages by theme:

  gf2         bit-packed matrices, stopping-set search, redundant extension
  ensembles   exact average weight distributions and typical stopping distances
  qlw         counts of small matrices whose row combinations avoid weight 1
  asymptotic  growth rates and critical exponents
  bec         erasure channel, peeling decoder, exact and Monte Carlo block error
  matrixio    dense text and alist matrix files
  kernels     compiled/fallback hot-kernel selection
  cli         command-line front end
"""

__version__ = "0.1.0"

from stopset.gf2 import (
    BinaryMatrix,
    StoppingReport,
    SupportSet,
    codeword_weight_distribution,
    enumerate_stopping_sets,
    is_stopping_vector,
    min_distance,
    redundant_extend,
    ss_indicator,
    ss_weight_distribution_exhaustive,
    stopping_distance,
)
from stopset.weights import BoundPair, WeightDistribution

__all__ = [
    "BinaryMatrix",
    "BoundPair",
    "StoppingReport",
    "SupportSet",
    "WeightDistribution",
    "__version__",
    "codeword_weight_distribution",
    "enumerate_stopping_sets",
    "is_stopping_vector",
    "min_distance",
    "redundant_extend",
    "ss_indicator",
    "ss_weight_distribution_exhaustive",
    "stopping_distance",
]
