#include "latred/reduction.hpp"

namespace latred {

nlohmann::json report_to_json(const ReductionReport& report) {
    nlohmann::json j{
        {"accepted_updates", report.accepted_updates},
        {"ineffective_attempts", report.ineffective_attempts},
        {"cvp_calls", report.cvp_calls},
        {"vector_comparisons", report.vector_comparisons},
        {"wall_rounds", report.wall_rounds},
        {"od_before", report.od_before},
        {"od_after", report.od_after},
        {"max_residual_ratio", report.max_residual_ratio},
    };
    if (report.seed) j["seed"] = *report.seed;
    return j;
}

}  // namespace latred
