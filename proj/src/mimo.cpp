#include "latred/mimo.hpp"

#include "latred/baselines.hpp"
#include "latred/cvp.hpp"
#include "latred/linalg.hpp"
#include "latred/lsh.hpp"
#include "latred/sr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace latred {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

void validate_config(const MimoConfig& c) {
    if (c.n_t < 1 || c.n_r < 1) throw InvalidInputError("MimoConfig: n_t, n_r must be >= 1");
    const int l = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.qam_order))));
    if (l * l != c.qam_order || (l & (l - 1)) != 0 || c.qam_order < 4)
        throw InvalidInputError("MimoConfig: qam_order must be 4, 16 or 64");
    if (!(c.correlation_rho >= 0.0 && c.correlation_rho < 1.0))
        throw InvalidInputError("MimoConfig: correlation_rho must lie in [0, 1)");
    if (!(c.tau > 0.0 && c.tau <= 1.0)) throw InvalidInputError("MimoConfig: tau must lie in (0, 1]");
}

}  // namespace

std::string to_string(Detector d) { return d == Detector::Zf ? "zf" : "sic"; }

std::string to_string(Reducer r) {
    switch (r) {
        case Reducer::None: return "none";
        case Reducer::Lll: return "lll";
        case Reducer::Seysen: return "seysen";
        case Reducer::SrPair: return "sr-pair";
        case Reducer::SrHash: return "sr-hash";
        case Reducer::SrCvp: return "sr-cvp";
    }
    return "?";
}

Detector detector_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "zf") return Detector::Zf;
    if (v == "sic") return Detector::Sic;
    throw InvalidInputError("unknown detector: " + s);
}

Reducer reducer_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "none") return Reducer::None;
    if (v == "lll") return Reducer::Lll;
    if (v == "seysen") return Reducer::Seysen;
    if (v == "sr-pair" || v == "srpair") return Reducer::SrPair;
    if (v == "sr-hash" || v == "srhash") return Reducer::SrHash;
    if (v == "sr-cvp" || v == "srcvp") return Reducer::SrCvp;
    throw InvalidInputError("unknown reducer: " + s);
}

MimoConfig mimo_config_from_json(const nlohmann::json& j) {
    MimoConfig c;
    if (j.contains("n_t")) c.n_t = j.at("n_t").get<int>();
    if (j.contains("n_r")) c.n_r = j.at("n_r").get<int>();
    if (j.contains("qam_order")) c.qam_order = j.at("qam_order").get<int>();
    if (j.contains("snr_db")) c.snr_db = j.at("snr_db").get<double>();
    if (j.contains("correlation_rho")) c.correlation_rho = j.at("correlation_rho").get<double>();
    if (j.contains("mmse")) c.mmse = j.at("mmse").get<bool>();
    if (j.contains("detector")) c.detector = detector_from_string(j.at("detector").get<std::string>());
    if (j.contains("reducer")) c.reducer = reducer_from_string(j.at("reducer").get<std::string>());
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<long long>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("lsh")) {
        LshParams p;
        p.k = j.at("lsh").value("k", 0);
        p.t = j.at("lsh").value("t", 1);
        c.lsh = p;
    }
    validate_config(c);
    return c;
}

int pam_levels(int qam_order) {
    return static_cast<int>(std::lround(std::sqrt(static_cast<double>(qam_order))));
}

int pam_bits_per_dim(int qam_order) {
    int b = 0, l = pam_levels(qam_order);
    while (l > 1) {
        l >>= 1;
        ++b;
    }
    return b;
}

int pam_amplitude(int level_index, int levels) { return 2 * level_index - (levels - 1); }

std::vector<int> pam_bits_of_level(int level_index, int levels) {
    // Gray code of the level index, MSB first: adjacent amplitudes differ in
    // one bit.
    int bits = 0, l = levels;
    while (l > 1) {
        l >>= 1;
        ++bits;
    }
    const int gray = level_index ^ (level_index >> 1);
    std::vector<int> out(bits);
    for (int b = 0; b < bits; ++b) out[b] = (gray >> (bits - 1 - b)) & 1;
    return out;
}

int pam_level_of_amplitude(int amplitude, int levels) {
    const int s = (amplitude + (levels - 1)) / 2;
    return std::clamp(s, 0, levels - 1);
}

double qam_symbol_energy(int qam_order) {
    const int l = pam_levels(qam_order);
    return 2.0 * (static_cast<double>(l) * l - 1.0) / 3.0;
}

Matrix complex_to_real(const Eigen::MatrixXcd& channel) {
    if (!channel.allFinite()) throw InvalidInputError("complex_to_real: non-finite entries");
    const Eigen::Index r = channel.rows(), c = channel.cols();
    Matrix out(2 * r, 2 * c);
    out.topLeftCorner(r, c) = channel.real();
    out.topRightCorner(r, c) = -channel.imag();
    out.bottomLeftCorner(r, c) = channel.imag();
    out.bottomRightCorner(r, c) = channel.real();
    return out;
}

ChannelRealization generate_channel(const MimoConfig& config, std::mt19937_64& rng) {
    validate_config(config);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double component_sigma = 1.0 / std::sqrt(2.0);  // CN(0,1) entries

    ChannelRealization ch;
    ch.complex_channel.resize(config.n_r, config.n_t);
    for (Eigen::Index i = 0; i < config.n_r; ++i)
        for (Eigen::Index j = 0; j < config.n_t; ++j)
            ch.complex_channel(i, j) = std::complex<double>(component_sigma * gauss(rng),
                                                            component_sigma * gauss(rng));

    if (config.correlation_rho > 0.0) {
        Matrix psi(config.n_r, config.n_r);
        for (Eigen::Index i = 0; i < config.n_r; ++i)
            for (Eigen::Index j = 0; j < config.n_r; ++j)
                psi(i, j) = std::pow(config.correlation_rho, std::abs(static_cast<double>(i - j)));
        ch.complex_channel = psi * ch.complex_channel;
    }

    ch.real_basis = complex_to_real(ch.complex_channel);

    const double sigma_s_sq = qam_symbol_energy(config.qam_order);
    const double sigma_w_sq =
        config.n_t * sigma_s_sq / std::pow(10.0, config.snr_db / 10.0);
    ch.noise_sigma = std::sqrt(sigma_w_sq / 2.0);
    return ch;
}

Matrix detection_basis(const ChannelRealization& channel, const MimoConfig& config) {
    const Matrix& b = channel.real_basis;
    if (!config.mmse) return b;
    const Eigen::Index n = b.cols();
    // Per-real-dimension sigma/sigma_s; equals sigma_w/sigma_s of the complex
    // model since both scale by sqrt(2).
    const double ratio = channel.noise_sigma / std::sqrt(qam_symbol_energy(config.qam_order) / 2.0);
    Matrix ext(b.rows() + n, n);
    ext.topRows(b.rows()) = b;
    ext.bottomRows(n) = ratio * Matrix::Identity(n, n);
    return ext;
}

DetectionResult lr_aided_detect(const Vector& y, const ChannelRealization& channel,
                                const Basis& reduced,
                                const UnimodularTransform& primal_transform,
                                const MimoConfig& config,
                                const std::vector<int>& transmitted_bits) {
    const Matrix b_ext = detection_basis(channel, config);
    const Eigen::Index n = b_ext.cols();
    if (y.size() != channel.real_basis.rows())
        throw InvalidInputError("lr_aided_detect: observation length mismatch");
    if (reduced.ambient_dim() != b_ext.rows() || reduced.rank() != n ||
        primal_transform.size() != n)
        throw InvalidInputError("lr_aided_detect: reducer output inconsistent with basis");

    Vector y_ext = Vector::Zero(b_ext.rows());
    y_ext.head(y.size()) = y;

    // Shift so the symbol domain becomes consecutive integers:
    // x' = (x+1)/2, y' = (y + B 1)/2 with B the (extended) primal basis.
    const Vector y_shift = (y_ext + b_ext.rowwise().sum()) / 2.0;

    IntVector z(n);
    if (config.detector == Detector::Sic) {
        const GramSchmidtData gs = gram_schmidt(reduced);
        z = babai_nearest_plane(gs, reduced, y_shift).coefficients;
    } else {
        const Vector sol = reduced.matrix().colPivHouseholderQr().solve(y_shift);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = std::llround(sol(i));
    }

    const IntVector x_shifted = primal_transform.matrix() * z;

    const int levels = pam_levels(config.qam_order);
    const std::int64_t lo = 1 - levels / 2, hi = levels / 2;  // consecutive-integer box

    DetectionResult result;
    result.transmitted_bits = transmitted_bits;
    result.decided_bits.reserve(transmitted_bits.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::int64_t clipped = std::clamp(x_shifted(i), lo, hi);
        const int amplitude = static_cast<int>(2 * clipped - 1);  // back to odd PAM
        const std::vector<int> bits =
            pam_bits_of_level(pam_level_of_amplitude(amplitude, levels), levels);
        result.decided_bits.insert(result.decided_bits.end(), bits.begin(), bits.end());
    }

    if (result.decided_bits.size() != result.transmitted_bits.size())
        throw InvalidInputError("lr_aided_detect: bit vector length mismatch");
    for (std::size_t i = 0; i < result.decided_bits.size(); ++i)
        result.bit_errors += result.decided_bits[i] != result.transmitted_bits[i];
    return result;
}

double pe_bound(const std::vector<double>& dual_norms, double sigma) {
    if (sigma <= 0.0) throw InvalidInputError("pe_bound: sigma must be positive");
    double prod = 1.0;
    for (const double d : dual_norms) {
        if (d <= 0.0) throw InvalidInputError("pe_bound: norms must be positive");
        prod *= std::erf(1.0 / (2.0 * std::sqrt(2.0) * sigma * d));
    }
    return 1.0 - prod;
}

namespace {

struct TrialReduction {
    UnimodularTransform primal;  // U with reduced primal = B_ext U
    double dual_od;
    long long comparisons;
};

TrialReduction reduce_dual(const Matrix& b_ext, const MimoConfig& config,
                           std::uint64_t hash_seed) {
    const Basis dual = dual_basis(Basis(b_ext));
    if (config.reducer == Reducer::None) {
        return {UnimodularTransform::identity(b_ext.cols()), orthogonality_defect(dual), 0};
    }
    ReductionOutcome out = [&] {
        switch (config.reducer) {
            case Reducer::Lll: return lll_reduce(dual, {});
            case Reducer::Seysen: return seysen_reduce(dual);
            case Reducer::SrPair: {
                SrConfig sc;
                sc.tau = config.tau;
                sc.subroutine = SrSubroutine::Pair;
                return sr_reduce(dual, sc);
            }
            case Reducer::SrHash: {
                LshParams p = config.lsh ? *config.lsh
                                         : default_lsh_params(b_ext.cols(), hash_seed);
                p.seed = hash_seed;
                return sr_hash_reduce(dual, config.tau, p);
            }
            case Reducer::SrCvp: return sr_cvp_heuristic(dual, config.tau);
            default: throw InvalidInputError("unreachable reducer");
        }
    }();
    // Dual transform U_d; the primal side uses U = U_d^{-T}, kept exact by the
    // incrementally maintained inverse.
    return {UnimodularTransform(out.transform_inverse.matrix().transpose()),
            out.report.od_after, out.report.vector_comparisons};
}

}  // namespace

std::vector<SweepRow> run_ber_sweep(const MimoConfig& config,
                                    const std::vector<double>& snr_points) {
    validate_config(config);
    if (config.trials < 1) throw InvalidInputError("run_ber_sweep: trials must be >= 1");
    if (snr_points.empty()) throw InvalidInputError("run_ber_sweep: no SNR points");

    const int levels = pam_levels(config.qam_order);
    const int bits_per_dim = pam_bits_per_dim(config.qam_order);
    const Eigen::Index n = 2 * config.n_t;

    std::vector<SweepRow> rows;
    for (std::size_t p = 0; p < snr_points.size(); ++p) {
        MimoConfig point_cfg = config;
        point_cfg.snr_db = snr_points[p];

        long long errors = 0, bits_total = 0;
        double comparisons_sum = 0.0, od_sum = 0.0;
        for (long long trial = 0; trial < config.trials; ++trial) {
            // Independent per-(point, trial) stream: trials are order-free.
            std::seed_seq seq{config.seed, static_cast<std::uint64_t>(p),
                              static_cast<std::uint64_t>(trial)};
            std::mt19937_64 rng(seq);

            const ChannelRealization ch = generate_channel(point_cfg, rng);

            std::uniform_int_distribution<int> level(0, levels - 1);
            Vector x(n);
            std::vector<int> tx_bits;
            tx_bits.reserve(n * bits_per_dim);
            for (Eigen::Index i = 0; i < n; ++i) {
                const int s = level(rng);
                x(i) = pam_amplitude(s, levels);
                const std::vector<int> b = pam_bits_of_level(s, levels);
                tx_bits.insert(tx_bits.end(), b.begin(), b.end());
            }

            std::normal_distribution<double> gauss(0.0, 1.0);
            Vector w(2 * config.n_r);
            for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = ch.noise_sigma * gauss(rng);

            const Vector y = ch.real_basis * x + w;

            const Matrix b_ext = detection_basis(ch, point_cfg);
            const TrialReduction red = reduce_dual(b_ext, point_cfg, rng());
            const Basis reduced_primal(b_ext * red.primal.as_real());

            DetectionResult det =
                lr_aided_detect(y, ch, reduced_primal, red.primal, point_cfg, tx_bits);
            det.comparisons_used = red.comparisons;
            errors += det.bit_errors;
            bits_total += static_cast<long long>(tx_bits.size());
            comparisons_sum += static_cast<double>(red.comparisons);
            od_sum += red.dual_od;
        }

        rows.push_back(SweepRow{snr_points[p], to_string(config.detector),
                                to_string(config.reducer),
                                static_cast<double>(errors) / static_cast<double>(bits_total),
                                comparisons_sum / static_cast<double>(config.trials),
                                od_sum / static_cast<double>(config.trials), config.trials,
                                config.seed});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "snr_db,detector,reducer,ber,mean_comparisons,mean_od,trials,seed\n";
    for (const SweepRow& r : rows) {
        std::ostringstream line;
        line.precision(12);
        line << r.snr_db << "," << r.detector << "," << r.reducer << "," << r.ber << ","
             << r.mean_comparisons << "," << r.mean_od << "," << r.trials << "," << r.seed;
        out << line.str() << "\n";
    }
}

}  // namespace latred
