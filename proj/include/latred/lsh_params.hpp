#pragma once

#include <cstdint>

namespace latred {

/// Angular-LSH amplification parameters: k sketch bits per table
/// (AND-composition), t tables (OR-composition). k=0, t=1 degenerates to the
/// brute-force pairwise search of SR-Pair.
struct LshParams {
    int k = 0;
    int t = 1;
    std::uint64_t seed = 0;
};

}  // namespace latred
