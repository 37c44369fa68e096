"""Exact torus-localization computations for Gromov-Witten invariants of P^r
and multiple-cover contributions of rigid rational curves."""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    GraphCapExceededError,
    GWLocError,
    InvalidArgumentError,
    MissingHodgeIntegralError,
    NonGenericWeightsError,
    UnsupportedGenusError,
)
from .exact import Partition, Rational, aut_order, bernoulli, partitions_of
from .graphs import FixedGraph, enumerate_graphs, enumerate_skeletons
from .gw import InvariantQuery, gw_invariant, plane_curve_count, wdvv_oracle, weight_independence_check
from .integrals import VertexIntegrand, integral_g0, integral_g0_closed, integral_g1, integral_g1_lambda, vertex_integral
from .localization import WeightVector, graph_contribution
from .multicover import (
    conjecture_value,
    gamma_series,
    lemma_lambda_sum,
    lemma_psi_sum,
    manin_sum,
    mast2_sum,
    mast_sum,
    multicover_graphsum,
    s_beta,
)
