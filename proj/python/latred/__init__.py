"""Sequential lattice reduction toolkit.

Thin wrapper over the C++ core: SR-CVP / SR-Pair / SR-Hash reducers with LLL
and Seysen baselines, exact CVP solvers, angular LSH helpers, and the MIMO
BER simulator.
"""

from _latred import (  # noqa: F401
    DegenerateBasisError,
    InvalidInputError,
    __version__,
    babai_nearest_plane,
    ber_sweep,
    closest_vector,
    default_lsh_params,
    dual_basis,
    gram_schmidt,
    lsh_parameter_helper,
    orthogonality_defect,
    pairwise_angles,
    pe_bound,
    reduce,
    shortest_vector,
    successive_minima,
)

__all__ = [
    "DegenerateBasisError",
    "InvalidInputError",
    "__version__",
    "babai_nearest_plane",
    "ber_sweep",
    "closest_vector",
    "default_lsh_params",
    "dual_basis",
    "gram_schmidt",
    "lsh_parameter_helper",
    "orthogonality_defect",
    "pairwise_angles",
    "pe_bound",
    "reduce",
    "shortest_vector",
    "successive_minima",
]
