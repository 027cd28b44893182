#pragma once

#include "latred/lsh_params.hpp"
#include "latred/reduction.hpp"
#include "latred/types.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace latred {

/// Square basis with i.i.d. N(0,1) entries.
Basis gaussian_basis(Eigen::Index n, std::mt19937_64& rng);

/// Dual of a fresh Gaussian basis; the input family of the MIMO experiments.
Basis dual_gaussian_basis(Eigen::Index n, std::mt19937_64& rng);

/// Dispatch a reducer by CLI name: lll, seysen, sr-pair, sr-hash, sr-cvp,
/// greedy.
ReductionOutcome run_reducer(const Basis& basis, const std::string& algorithm, double tau,
                             std::optional<LshParams> lsh = std::nullopt,
                             int enumeration_cap = 24);

struct OdSweepRow {
    int n = 0;
    std::string algorithm;
    std::string variant;  // "primal" or "dual"
    double mean_od_before = 0;
    double mean_od_after = 0;
    long long trials = 0;
    std::string status;  // "ok" or an error marker
};

std::vector<OdSweepRow> od_sweep(const std::vector<int>& dims, long long trials,
                                 const std::vector<std::string>& algorithms, bool dual,
                                 std::uint64_t seed, double tau = 1.0,
                                 std::optional<LshParams> lsh = std::nullopt);

struct AngleHistogram {
    std::vector<long long> counts;  // bins over [0, pi/2]
    double bin_width = 0;
    long long total_pairs = 0;
    double fraction_below_pi_3 = 0;
};

AngleHistogram angle_histogram(int n, long long trials, bool dual, int bins,
                               std::uint64_t seed);

struct BoundsCheckRow {
    int n = 0;
    long long trials = 0;
    long long length_violations = 0;
    long long od_violations = 0;
    long long angle_violations = 0;
};

std::vector<BoundsCheckRow> bounds_check(const std::vector<int>& dims, long long trials,
                                         double tau, std::uint64_t seed);

/// The greedy counter-example: b_i = 2 e_i for i < 5 and b_5 = (1,1,1,1,eps).
Basis counterexample_greedy_5x5(double epsilon);

/// The SR-Pair counter-example of the spherical construction at
/// phi = pi/2 - nu; pairwise rounding coefficients all vanish while the
/// basis is far from orthogonal.
Basis counterexample_pair_3x3(double phi);

struct CounterexampleReport {
    double epsilon = 0;
    double greedy_min_norm = 0;   // stays 2.0: greedy never queries the short columns
    double srcvp_min_norm = 0;    // reaches 2 eps
    double shortest_norm = 0;     // lambda_1 = 2 eps
    bool greedy_changed = false;

    double nu = 0;
    double phi = 0;
    double input_od = 0;          // diverges as nu -> 0
    bool pair_changed = false;    // SR-Pair cannot touch this basis
    double pair_od = 0;
    double srcvp_od = 0;          // 1.1547 at nu = 1e-4
};

CounterexampleReport run_counterexamples(double epsilon = 0.5, double nu = 1e-4);

}  // namespace latred
