"""Unreliability of hypergraphs under independent hyperedge failure.

``u_G(p)`` is the probability that ``G`` disconnects when every hyperedge fails
independently with probability ``p``. The package provides an exact
enumeration oracle, plain Monte Carlo, an unbiased estimator by random
contraction with large-edge enumeration (:func:`estimate_alg1`), and an
estimator with additive slack ``delta`` that samples large-edge failures from a
degree-cut DNF (:func:`estimate_alg2`).
"""

__version__ = "0.1.0"

from .dnf import DnfFormula, KlmSampler, degree_cut_dnf, klm_sample_satisfying, klm_unbiased_estimate
from .enumeration import DESK_ALG1, PAPER_ALG1, Alg1Profile, estimate_alg1
from .errors import (
    AlreadyDisconnected,
    BudgetExhausted,
    HyperrelError,
    InvariantViolation,
    NotPairwiseIntersecting,
    ParseError,
    TooLargeForExact,
    UndefinedRelativeVariance,
    UnsatisfiableFormula,
)
from .exact import exact_dnf_probability, exact_unreliability
from .hypergraph import (
    ContractionMap,
    Hypergraph,
    contract,
    delete_edges,
    is_connected,
    min_cut_value,
    random_contract,
)
from .io import RunReport, generate, parse_hypergraph, read_hypergraph, serialize_hypergraph
from .revelation import DESK_ALG2, PAPER_ALG2, Alg2Profile, estimate_alg2
from .stats import EstimatorRun, amplify, median_of_means, monte_carlo_unreliability

__all__ = [
    "Hypergraph",
    "ContractionMap",
    "contract",
    "delete_edges",
    "random_contract",
    "is_connected",
    "min_cut_value",
    "exact_unreliability",
    "exact_dnf_probability",
    "DnfFormula",
    "KlmSampler",
    "degree_cut_dnf",
    "klm_sample_satisfying",
    "klm_unbiased_estimate",
    "EstimatorRun",
    "amplify",
    "median_of_means",
    "monte_carlo_unreliability",
    "Alg1Profile",
    "PAPER_ALG1",
    "DESK_ALG1",
    "estimate_alg1",
    "Alg2Profile",
    "PAPER_ALG2",
    "DESK_ALG2",
    "estimate_alg2",
    "RunReport",
    "generate",
    "parse_hypergraph",
    "read_hypergraph",
    "serialize_hypergraph",
    "HyperrelError",
    "AlreadyDisconnected",
    "BudgetExhausted",
    "InvariantViolation",
    "NotPairwiseIntersecting",
    "ParseError",
    "TooLargeForExact",
    "UndefinedRelativeVariance",
    "UnsatisfiableFormula",
]
