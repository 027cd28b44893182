#pragma once

#include "latred/cvp.hpp"
#include "latred/lsh_params.hpp"
#include "latred/reduction.hpp"
#include "latred/types.hpp"

#include <optional>

namespace latred {

enum class SrSubroutine { ExactCvp, Pair, Hash, Greedy };

struct SrConfig {
    double tau = 1.0;  // acceptance threshold, in (0, 1]
    SrSubroutine subroutine = SrSubroutine::Pair;
    std::optional<LshParams> lsh;             // required for Hash
    std::optional<long long> max_updates;     // safety cap on accepted updates
    int enumeration_cap = kDefaultEnumerationCap;
};

/// Sequential reduction, the round-robin loop: visit columns cyclically,
/// query the configured subroutine against the sublattice of all other
/// columns, accept when ||b_i - s_i||^2 < tau ||b_i||^2 and the norm strictly
/// drops, and stop after n consecutive ineffective attempts.
ReductionOutcome sr_reduce(const Basis& basis, const SrConfig& config);

/// Heuristic SR-CVP schedule: CVP-reduce the longest column, then the
/// remaining columns in descending norm order, then iterate the round-robin
/// loop with the exact oracle until stationary.
ReductionOutcome sr_cvp_heuristic(const Basis& basis, double tau = 1.0,
                                  int enumeration_cap = kDefaultEnumerationCap);

/// Comparison variant that only ever CVP-reduces the currently longest
/// column; stops as soon as that column cannot be strictly improved.
ReductionOutcome greedy_reduce(const Basis& basis, double tau = 1.0,
                               int enumeration_cap = kDefaultEnumerationCap);

/// True iff every pairwise rounding coefficient <b_i,b_j>/<b_j,b_j> rounds
/// to zero (the SR-Pair stationarity condition).
bool is_pair_stationary(const Basis& basis);

/// True iff no column can be strictly improved by the exact CVP subroutine
/// under the tau rule.
bool is_cvp_stationary(const Basis& basis, double tau = 1.0,
                       int enumeration_cap = kDefaultEnumerationCap);

/// Checks of the SR-CVP performance bounds for small n, using the
/// enumeration oracle for the successive minima. Valid when n < 4 tau + 1.
struct SrBoundsReport {
    bool length_ok = false;
    bool od_ok = false;
    bool angle_ok = false;
    double basis_length = 0, length_bound = 0;
    double od = 0, od_bound = 0;
    double cos_sq_max = 0, cos_sq_bound = 0;
    double lambda_1 = 0, lambda_n = 0;
};

SrBoundsReport check_srcvp_bounds(const Basis& basis, double tau = 1.0,
                                  int enumeration_cap = kDefaultEnumerationCap);

}  // namespace latred
