#include "latred/experiments.hpp"

#include "latred/baselines.hpp"
#include "latred/cvp.hpp"
#include "latred/linalg.hpp"
#include "latred/lsh.hpp"
#include "latred/sr.hpp"

#include <cmath>
#include <numbers>

namespace latred {

Basis gaussian_basis(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) b(i, j) = gauss(rng);
    return Basis(std::move(b));
}

Basis dual_gaussian_basis(Eigen::Index n, std::mt19937_64& rng) {
    return dual_basis(gaussian_basis(n, rng));
}

ReductionOutcome run_reducer(const Basis& basis, const std::string& algorithm, double tau,
                             std::optional<LshParams> lsh, int enumeration_cap) {
    if (algorithm == "lll") return lll_reduce(basis, {});
    if (algorithm == "seysen") return seysen_reduce(basis);
    if (algorithm == "sr-pair") {
        SrConfig c;
        c.tau = tau;
        c.subroutine = SrSubroutine::Pair;
        return sr_reduce(basis, c);
    }
    if (algorithm == "sr-hash") {
        const LshParams p = lsh ? *lsh : default_lsh_params(basis.rank(), 0);
        return sr_hash_reduce(basis, tau, p);
    }
    if (algorithm == "sr-cvp") return sr_cvp_heuristic(basis, tau, enumeration_cap);
    if (algorithm == "greedy") return greedy_reduce(basis, tau, enumeration_cap);
    throw InvalidInputError("unknown algorithm: " + algorithm);
}

std::vector<OdSweepRow> od_sweep(const std::vector<int>& dims, long long trials,
                                 const std::vector<std::string>& algorithms, bool dual,
                                 std::uint64_t seed, double tau,
                                 std::optional<LshParams> lsh) {
    if (trials < 1) throw InvalidInputError("od_sweep: trials must be >= 1");
    std::vector<OdSweepRow> rows;
    for (const int n : dims) {
        if (n < 2) throw InvalidInputError("od_sweep: dimensions must be >= 2");
        for (const std::string& algo : algorithms) {
            OdSweepRow row;
            row.n = n;
            row.algorithm = algo;
            row.variant = dual ? "dual" : "primal";
            row.trials = trials;
            row.status = "ok";
            double sum_before = 0, sum_after = 0;
            try {
                for (long long t = 0; t < trials; ++t) {
                    std::seed_seq seq{seed, static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(t)};
                    std::mt19937_64 rng(seq);
                    const Basis b = dual ? dual_gaussian_basis(n, rng) : gaussian_basis(n, rng);
                    std::optional<LshParams> p = lsh;
                    if (algo == "sr-hash" && !p) p = default_lsh_params(n, rng());
                    const ReductionOutcome out = run_reducer(b, algo, tau, p);
                    sum_before += out.report.od_before;
                    sum_after += out.report.od_after;
                }
                row.mean_od_before = sum_before / static_cast<double>(trials);
                row.mean_od_after = sum_after / static_cast<double>(trials);
            } catch (const Error& e) {
                row.status = std::string("error: ") + e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

AngleHistogram angle_histogram(int n, long long trials, bool dual, int bins,
                               std::uint64_t seed) {
    if (n < 2) throw InvalidInputError("angle_histogram: n must be >= 2");
    if (bins < 1 || trials < 1) throw InvalidInputError("angle_histogram: bad bins/trials");
    AngleHistogram h;
    h.counts.assign(bins, 0);
    const double half_pi = std::numbers::pi / 2.0;
    h.bin_width = half_pi / bins;
    long long below = 0;
    for (long long t = 0; t < trials; ++t) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(t)};
        std::mt19937_64 rng(seq);
        const Basis b = dual ? dual_gaussian_basis(n, rng) : gaussian_basis(n, rng);
        const Matrix angles = pairwise_angles(b);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double a = angles(i, j);
                int bin = static_cast<int>(a / h.bin_width);
                bin = std::min(bin, bins - 1);
                ++h.counts[bin];
                ++h.total_pairs;
                if (a < std::numbers::pi / 3.0) ++below;
            }
        }
    }
    h.fraction_below_pi_3 = static_cast<double>(below) / static_cast<double>(h.total_pairs);
    return h;
}

std::vector<BoundsCheckRow> bounds_check(const std::vector<int>& dims, long long trials,
                                         double tau, std::uint64_t seed) {
    if (trials < 1) throw InvalidInputError("bounds_check: trials must be >= 1");
    for (const int n : dims)
        if (!(n < 4.0 * tau + 1.0))
            throw InvalidInputError("bounds_check: the SR-CVP bounds require n < 4 tau + 1; n = " +
                                    std::to_string(n) + " is out of range");
    std::vector<BoundsCheckRow> rows;
    for (const int n : dims) {
        BoundsCheckRow row;
        row.n = n;
        row.trials = trials;
        for (long long t = 0; t < trials; ++t) {
            std::seed_seq seq{seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)};
            std::mt19937_64 rng(seq);
            const Basis b = gaussian_basis(n, rng);
            const ReductionOutcome out = sr_cvp_heuristic(b, tau);
            const SrBoundsReport rep = check_srcvp_bounds(out.basis, tau);
            row.length_violations += !rep.length_ok;
            row.od_violations += !rep.od_ok;
            row.angle_violations += !rep.angle_ok;
        }
        rows.push_back(row);
    }
    return rows;
}

Basis counterexample_greedy_5x5(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidInputError("counterexample_greedy_5x5: epsilon must lie in (0, 1)");
    Matrix b = Matrix::Zero(5, 5);
    for (int i = 0; i < 4; ++i) b(i, i) = 2.0;
    for (int i = 0; i < 4; ++i) b(i, 4) = 1.0;
    b(4, 4) = epsilon;
    return Basis(std::move(b));
}

Basis counterexample_pair_3x3(double phi) {
    const double c3 = 0.5;                        // cos(pi/3)
    const double s3 = std::sqrt(3.0) / 2.0;      // sin(pi/3)
    Matrix a(3, 3);
    a << std::sin(phi) * c3, -std::sin(phi) * c3, 1.0,
         std::sin(phi) * s3,  std::sin(phi) * s3, 0.0,
         std::cos(phi),      -std::cos(phi),      0.0;
    return Basis(std::move(a));
}

CounterexampleReport run_counterexamples(double epsilon, double nu) {
    CounterexampleReport rep;
    rep.epsilon = epsilon;
    rep.nu = nu;
    rep.phi = std::numbers::pi / 2.0 - nu;

    {
        const Basis b5 = counterexample_greedy_5x5(epsilon);
        const ReductionOutcome greedy = greedy_reduce(b5);
        rep.greedy_changed = greedy.report.accepted_updates > 0;
        rep.greedy_min_norm = greedy.basis.matrix().colwise().norm().minCoeff();
        const ReductionOutcome srcvp = sr_cvp_heuristic(b5);
        rep.srcvp_min_norm = srcvp.basis.matrix().colwise().norm().minCoeff();
        rep.shortest_norm = std::sqrt(shortest_vector(b5).residual_norm_sq);
    }
    {
        const Basis a = counterexample_pair_3x3(rep.phi);
        rep.input_od = orthogonality_defect(a);
        SrConfig pair_cfg;
        pair_cfg.subroutine = SrSubroutine::Pair;
        const ReductionOutcome pair = sr_reduce(a, pair_cfg);
        rep.pair_changed = pair.report.accepted_updates > 0;
        rep.pair_od = pair.report.od_after;
        const ReductionOutcome srcvp = sr_cvp_heuristic(a);
        rep.srcvp_od = srcvp.report.od_after;
    }
    return rep;
}

}  // namespace latred
