#pragma once

#include "latred/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace latred {

/// Per-run statistics common to every reducer in the project.
struct ReductionReport {
    long long accepted_updates = 0;
    long long ineffective_attempts = 0;
    long long cvp_calls = 0;
    long long vector_comparisons = 0;
    long long wall_rounds = 0;  // completed cursor passes
    double od_before = 1.0;
    double od_after = 1.0;

    // Extensions, not part of the flat JSON contract's required keys.
    double max_residual_ratio = 0.0;  // sup ||b_i - s_i|| / ||b_i|| over accepted updates
    std::optional<std::uint64_t> seed;  // recorded for SR-Hash replay

    // sum ||b_i||^2 before any update and after each accepted one; in-memory
    // only, used by monotonicity checks.
    std::vector<double> sumsq_trace;
};

/// Flat JSON object with the stable field names consumed by the CLI.
nlohmann::json report_to_json(const ReductionReport& report);

struct ReductionOutcome {
    Basis basis;
    UnimodularTransform transform;          // U with output = input * U
    UnimodularTransform transform_inverse;  // U^{-1}, maintained exactly
    ReductionReport report;
};

}  // namespace latred
