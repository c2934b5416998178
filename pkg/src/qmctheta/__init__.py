"""Product-state lower bounds on quantum Max Cut via the Lovász theta
function, with randomized Gaussian projection rounding and exact
verification on small graphs."""

from __future__ import annotations

from ._backend import BACKEND
from .gp import (
    GpReport,
    MomentMatrix,
    gp_pipeline,
    gp_sdp_solve,
    moment_matrix_of_product_state,
    stack_and_normalize,
)
from .graphs import (
    Graph,
    GraphParseError,
    complement,
    named_graph,
    parse_dimacs,
    parse_edge_list,
    to_edge_list,
)
from .numerics import (
    PsdError,
    SdpConvergenceError,
    SdpProblem,
    SdpResult,
    eigensystem_symmetric,
    gaussian_matrix,
    psd_factor,
    sdp_solve,
)
from .rounding import (
    LemmaCheck,
    ProductState,
    RoundingEstimate,
    classical_cut_from_rounding,
    energy_product,
    estimate_expected_energy,
    product_state_from_bloch,
    round_vectors,
    theta_lower_bound,
    verify_lemma_expectation,
)
from .specialfn import (
    SeriesConvergenceError,
    SeriesDomainError,
    SeriesEval,
    expected_inner_product,
    overlap_series,
    rounding_coefficient,
)
from .spectrum import (
    apply_hamiltonian,
    dense_hamiltonian,
    dense_product_energy_oracle,
    max_cut_bruteforce,
    max_eigenvalue,
)
from .theta import (
    EdgelessGraphError,
    ThetaCertificate,
    lovasz_theta_complement,
    vector_chromatic,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EdgelessGraphError",
    "GpReport",
    "Graph",
    "GraphParseError",
    "LemmaCheck",
    "MomentMatrix",
    "ProductState",
    "PsdError",
    "RoundingEstimate",
    "SdpConvergenceError",
    "SdpProblem",
    "SdpResult",
    "SeriesConvergenceError",
    "SeriesDomainError",
    "SeriesEval",
    "ThetaCertificate",
    "__version__",
    "apply_hamiltonian",
    "classical_cut_from_rounding",
    "complement",
    "dense_hamiltonian",
    "dense_product_energy_oracle",
    "eigensystem_symmetric",
    "energy_product",
    "estimate_expected_energy",
    "expected_inner_product",
    "gaussian_matrix",
    "gp_pipeline",
    "gp_sdp_solve",
    "lovasz_theta_complement",
    "max_cut_bruteforce",
    "max_eigenvalue",
    "moment_matrix_of_product_state",
    "named_graph",
    "overlap_series",
    "parse_dimacs",
    "parse_edge_list",
    "product_state_from_bloch",
    "psd_factor",
    "round_vectors",
    "rounding_coefficient",
    "sdp_solve",
    "stack_and_normalize",
    "theta_lower_bound",
    "to_edge_list",
    "vector_chromatic",
    "verify_lemma_expectation",
]
