#pragma once

#include "latred/lsh_params.hpp"
#include "latred/reduction.hpp"
#include "latred/types.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace latred {

enum class Detector { Zf, Sic };
enum class Reducer { None, Lll, Seysen, SrPair, SrHash, SrCvp };

std::string to_string(Detector d);
std::string to_string(Reducer r);
Detector detector_from_string(const std::string& s);
Reducer reducer_from_string(const std::string& s);

struct MimoConfig {
    int n_t = 8;                   // single-antenna uplink users
    int n_r = 8;                   // base-station antennas
    int qam_order = 16;            // 4, 16 or 64
    double snr_db = 20.0;          // 10 log10(n_t sigma_s^2 / sigma_w^2)
    double correlation_rho = 0.0;  // spatial correlation, in [0, 1)
    bool mmse = true;
    Detector detector = Detector::Sic;
    Reducer reducer = Reducer::None;
    std::optional<LshParams> lsh;  // SR-Hash k/t; defaults from the dimension
    double tau = 1.0;
    long long trials = 2000;
    std::uint64_t seed = 0;
};

MimoConfig mimo_config_from_json(const nlohmann::json& j);

struct ChannelRealization {
    Eigen::MatrixXcd complex_channel;  // n_r x n_t
    Matrix real_basis;                 // 2n_r x 2n_t, [[Re, -Im], [Im, Re]]
    double noise_sigma;                // per real dimension, sigma_w / sqrt(2)
};

struct DetectionResult {
    std::vector<int> decided_bits;
    std::vector<int> transmitted_bits;
    long long bit_errors = 0;
    long long comparisons_used = 0;
};

/// [[Re(B), -Im(B)], [Im(B), Re(B)]], exactly.
Matrix complex_to_real(const Eigen::MatrixXcd& channel);

/// i.i.d. CN(0,1) channel; correlation_rho > 0 left-multiplies by the
/// correlation matrix Psi_ij = rho^|i-j|. noise_sigma follows snr_db.
ChannelRealization generate_channel(const MimoConfig& config, std::mt19937_64& rng);

/// Mean energy of the complex QAM constellation (10 for 16-QAM).
double qam_symbol_energy(int qam_order);

/// Real basis used by the detector: the plain real channel, or the
/// MMSE-extended stack [B; (sigma/sigma_s) I].
Matrix detection_basis(const ChannelRealization& channel, const MimoConfig& config);

/// Lattice-reduction-aided detection: shift the observation so the symbol
/// domain is a consecutive-integer box, run ZF or SIC (Babai) on the reduced
/// basis, map coefficients back through U, clip, and Gray-demap to bits.
/// `reduced` and `primal_transform` must be consistent with
/// detection_basis(channel, config).
DetectionResult lr_aided_detect(const Vector& y, const ChannelRealization& channel,
                                const Basis& reduced,
                                const UnimodularTransform& primal_transform,
                                const MimoConfig& config,
                                const std::vector<int>& transmitted_bits);

/// SIC pairwise-error upper bound 1 - prod_i erf(1 / (2 sqrt(2) sigma ||d_i||)).
double pe_bound(const std::vector<double>& dual_norms, double sigma);

struct SweepRow {
    double snr_db;
    std::string detector;
    std::string reducer;
    double ber;
    double mean_comparisons;
    double mean_od;
    long long trials;
    std::uint64_t seed;
};

/// Monte-Carlo BER sweep. Per trial: fresh channel, symbols and noise from a
/// per-(point, trial) RNG stream; the reducer runs on the dual of the
/// detection basis and the primal transform is recovered exactly as the
/// inverse transpose of the dual's transform.
std::vector<SweepRow> run_ber_sweep(const MimoConfig& config,
                                    const std::vector<double>& snr_points);

/// CSV with the stable header
/// "snr_db,detector,reducer,ber,mean_comparisons,mean_od,trials,seed".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Per-real-dimension PAM helpers (Gray-coded), exposed for tests.
int pam_levels(int qam_order);                       // L = sqrt(order)
int pam_bits_per_dim(int qam_order);                 // log2(L)
int pam_amplitude(int level_index, int levels);      // 2s - (L-1)
std::vector<int> pam_bits_of_level(int level_index, int levels);
int pam_level_of_amplitude(int amplitude, int levels);

}  // namespace latred
