#pragma once

#include "latred/reduction.hpp"
#include "latred/types.hpp"

namespace latred {

struct LllConfig {
    double delta = 0.75;  // Lovasz parameter, in (1/4, 1]
};

/// Textbook swap-based LLL. The output is size-reduced (|mu_ij| <= 1/2) and
/// satisfies the Lovasz condition with `delta`. vector_comparisons charges
/// the vector length per candidate touched during size reduction.
ReductionOutcome lll_reduce(const Basis& basis, const LllConfig& config = {});

/// Seysen's pairwise reduction: sweep ordered pairs (i, j), apply
/// b_j <- b_j + c_ij b_i with the dual updated in lockstep, until a full
/// sweep leaves the basis fixed (a local minimum of sum ||b_i||^2 ||d_i||^2).
ReductionOutcome seysen_reduce(const Basis& basis);

/// Seysen's measure sum_i ||b_i||^2 ||d_i||^2.
double seysen_measure(const Basis& basis);

}  // namespace latred
