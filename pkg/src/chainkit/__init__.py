"""chainkit: finite Markov chains and random walks on weighted digraphs.

Structural classification, stationary and flow analysis, spectral
decomposition with an eigenvalue taxonomy, reversibility testing and
reversibilization, graph Laplacians, absorbing-chain fundamental
matrices, and teleporting random walks. See README.md for a tour.
"""

from . import errors
from .absorbing import canonical_form, fundamental_matrix
from .chain import (
    TransitionMatrix,
    build_chain,
    conditional_expectation,
    evolve,
    occupancy,
    point_mass,
    sample,
    validate_distribution,
)
from .demo import line_chain
from .graph import (
    WeightedDigraph,
    build_graph,
    random_walk,
    rw_set_representative,
    same_rw_set,
)
from .laplacian import (
    build_laplacian,
    directed_laplacian,
    gft,
    inverse_gft,
    quadratic_form,
    smooth_spectrum,
)
from .numlin import eigen_from_schur, real_schur, solve_linear, sym_eigen
from .reversal import (
    k_matrix,
    reversibility,
    reversibilize,
    time_reverse,
)
from .spectral import decompose, perron_report, spectral_evolve, taxonomy
from .stationary import combine, equal_weight, flow_matrix, stationary_basis
from .structure import classify, communicating_classes
from .surfer import SurferConfig, google_matrix, pagerank

__version__ = "0.1.0"

__all__ = [
    "TransitionMatrix",
    "WeightedDigraph",
    "SurferConfig",
    "build_chain",
    "build_graph",
    "build_laplacian",
    "canonical_form",
    "classify",
    "combine",
    "communicating_classes",
    "conditional_expectation",
    "decompose",
    "directed_laplacian",
    "eigen_from_schur",
    "equal_weight",
    "errors",
    "evolve",
    "flow_matrix",
    "fundamental_matrix",
    "gft",
    "google_matrix",
    "inverse_gft",
    "k_matrix",
    "line_chain",
    "occupancy",
    "pagerank",
    "perron_report",
    "point_mass",
    "quadratic_form",
    "random_walk",
    "real_schur",
    "reversibility",
    "reversibilize",
    "rw_set_representative",
    "same_rw_set",
    "sample",
    "smooth_spectrum",
    "solve_linear",
    "spectral_evolve",
    "stationary_basis",
    "sym_eigen",
    "taxonomy",
    "time_reverse",
    "validate_distribution",
]
