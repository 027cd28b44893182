// Command-line front end: reduction runs and the experiment sweeps, all
// emitting reproducible CSV/JSON artifacts.

#include "latred/baselines.hpp"
#include "latred/experiments.hpp"
#include "latred/linalg.hpp"
#include "latred/lsh.hpp"
#include "latred/mimo.hpp"
#include "latred/sr.hpp"
#include "latred/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw latred::InvalidInputError("empty integer list: " + s);
    return out;
}

std::vector<std::string> parse_str_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw latred::InvalidInputError("empty list: " + s);
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw latred::InvalidInputError("cannot open output file: " + path);
    out.precision(17);
    return out;
}

// Every artifact records version, the full parameter set and the seed, so a
// run can be replayed bit for bit.
void write_metadata(std::ostream& out, const std::string& command, const json& params) {
    out << "# latred " << latred::kVersion << "\n";
    out << "# command: " << command << "\n";
    out << "# params: " << params.dump() << "\n";
}

struct ReduceArgs {
    std::string in, out;
    std::string transform_out, report_out;
    std::string algo = "sr-pair";
    double tau = 1.0;
    int k = -1, t = -1;
    std::uint64_t seed = 0;
    int cap = latred::kDefaultEnumerationCap;
};

int cmd_reduce(const ReduceArgs& a) {
    const latred::Basis input = latred::read_basis_file(a.in);

    std::optional<latred::LshParams> lsh;
    if (a.algo == "sr-hash") {
        latred::LshParams p = latred::default_lsh_params(input.rank(), a.seed);
        if (a.k >= 0) p.k = a.k;
        if (a.t >= 1) p.t = a.t;
        p.seed = a.seed;
        lsh = p;
    }
    const latred::ReductionOutcome out = latred::run_reducer(input, a.algo, a.tau, lsh, a.cap);

    json params{{"algo", a.algo}, {"tau", a.tau}, {"seed", a.seed}, {"in", a.in}};
    if (lsh) params["lsh"] = {{"k", lsh->k}, {"t", lsh->t}};
    std::ostringstream meta;
    write_metadata(meta, "reduce", params);

    latred::write_basis_file(a.out, out.basis, "latred " + std::string(latred::kVersion) +
                                                   "\nparams: " + params.dump());

    const std::string tpath = a.transform_out.empty() ? a.out + ".U.txt" : a.transform_out;
    {
        std::ofstream tf = open_output(tpath);
        const auto& u = out.transform.matrix();
        tf << u.rows() << " " << u.cols() << "\n";
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            for (Eigen::Index c = 0; c < u.cols(); ++c)
                tf << u(r, c) << (c + 1 == u.cols() ? "" : " ");
            tf << "\n";
        }
    }

    const std::string rpath = a.report_out.empty() ? a.out + ".report.json" : a.report_out;
    {
        std::ofstream rf = open_output(rpath);
        json j = latred::report_to_json(out.report);
        j["algo"] = a.algo;
        j["version"] = latred::kVersion;
        j["params"] = params;
        rf << j.dump(2) << "\n";
    }

    std::cout << "reduced " << a.in << " with " << a.algo << ": od " << out.report.od_before
              << " -> " << out.report.od_after << ", " << out.report.accepted_updates
              << " updates\n";
    return 0;
}

int cmd_od_sweep(const std::string& dims, long long trials, const std::string& algos,
                 const std::string& variant, double tau, std::uint64_t seed, int k, int t,
                 const std::string& out_path) {
    std::optional<latred::LshParams> lsh;
    if (k >= 0 || t >= 1) {
        latred::LshParams p;
        p.k = std::max(k, 0);
        p.t = std::max(t, 1);
        p.seed = seed;
        lsh = p;
    }
    const auto rows = latred::od_sweep(parse_int_list(dims), trials, parse_str_list(algos),
                                       variant == "dual", seed, tau, lsh);
    std::ofstream out = open_output(out_path);
    write_metadata(out, "od-sweep",
                   json{{"dims", dims},
                        {"trials", trials},
                        {"algos", algos},
                        {"variant", variant},
                        {"tau", tau},
                        {"seed", seed}});
    out << "n,algorithm,variant,mean_od_before,mean_od_after,trials,seed,status\n";
    for (const auto& r : rows)
        out << r.n << "," << r.algorithm << "," << r.variant << "," << r.mean_od_before << ","
            << r.mean_od_after << "," << r.trials << "," << seed << "," << r.status << "\n";
    return 0;
}

int cmd_angle_hist(int n, long long trials, const std::string& variant, int bins,
                   std::uint64_t seed, const std::string& out_path) {
    const latred::AngleHistogram h =
        latred::angle_histogram(n, trials, variant == "dual", bins, seed);
    std::ofstream out = open_output(out_path);
    write_metadata(out, "angle-hist",
                   json{{"n", n},
                        {"trials", trials},
                        {"variant", variant},
                        {"bins", bins},
                        {"seed", seed},
                        {"fraction_below_pi_3", h.fraction_below_pi_3}});
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        out << i * h.bin_width << "," << (i + 1) * h.bin_width << "," << h.counts[i] << "\n";
    return 0;
}

int cmd_bounds_check(const std::string& dims, long long trials, double tau,
                     std::uint64_t seed, const std::string& out_path) {
    const auto rows = latred::bounds_check(parse_int_list(dims), trials, tau, seed);
    std::ofstream out = open_output(out_path);
    write_metadata(out, "bounds-check",
                   json{{"dims", dims}, {"trials", trials}, {"tau", tau}, {"seed", seed}});
    out << "n,trials,length_violations,od_violations,angle_violations\n";
    long long total = 0;
    for (const auto& r : rows) {
        out << r.n << "," << r.trials << "," << r.length_violations << "," << r.od_violations
            << "," << r.angle_violations << "\n";
        total += r.length_violations + r.od_violations + r.angle_violations;
    }
    std::cout << "bounds-check: " << total << " violations\n";
    return 0;
}

json sweep_config_json(const std::string& path, latred::MimoConfig& cfg,
                       std::vector<double>& snr_points) {
    std::ifstream in(path);
    if (!in) throw latred::InvalidInputError("cannot open config: " + path);
    json j;
    in >> j;
    cfg = latred::mimo_config_from_json(j);
    if (j.contains("snr_points"))
        snr_points = j.at("snr_points").get<std::vector<double>>();
    else
        snr_points = {cfg.snr_db};
    return j;
}

int cmd_ber_sweep(const std::string& config_path, const std::string& out_path,
                  bool complexity_view) {
    latred::MimoConfig cfg;
    std::vector<double> snr_points;
    const json raw = sweep_config_json(config_path, cfg, snr_points);

    const auto rows = latred::run_ber_sweep(cfg, snr_points);
    std::ofstream out = open_output(out_path);
    write_metadata(out, complexity_view ? "complexity-sweep" : "ber-sweep", raw);
    if (complexity_view) {
        out << "snr_db,reducer,mean_comparisons,mean_od,trials,seed\n";
        for (const auto& r : rows)
            out << r.snr_db << "," << r.reducer << "," << r.mean_comparisons << "," << r.mean_od
                << "," << r.trials << "," << r.seed << "\n";
    } else {
        latred::write_sweep_csv(out, rows);
    }
    return 0;
}

int cmd_counterexamples(double epsilon, double nu, const std::string& out_path) {
    const latred::CounterexampleReport r = latred::run_counterexamples(epsilon, nu);
    json j{{"epsilon", r.epsilon},
           {"greedy_min_norm", r.greedy_min_norm},
           {"srcvp_min_norm", r.srcvp_min_norm},
           {"shortest_norm", r.shortest_norm},
           {"greedy_changed", r.greedy_changed},
           {"nu", r.nu},
           {"phi", r.phi},
           {"input_od", r.input_od},
           {"pair_changed", r.pair_changed},
           {"pair_od", r.pair_od},
           {"srcvp_od", r.srcvp_od},
           {"version", latred::kVersion}};
    std::cout << "5x5 greedy counter-example (eps = " << r.epsilon << "):\n"
              << "  greedy min column norm: " << r.greedy_min_norm
              << (r.greedy_changed ? "  (changed)" : "  (unchanged)") << "\n"
              << "  sr-cvp min column norm: " << r.srcvp_min_norm << " (= 2 eps)\n"
              << "  shortest vector norm:   " << r.shortest_norm << "\n"
              << "3x3 pair counter-example (nu = " << r.nu << "):\n"
              << "  input od:  " << r.input_od << "\n"
              << "  sr-pair:   " << (r.pair_changed ? "changed" : "unchanged") << ", od "
              << r.pair_od << "\n"
              << "  sr-cvp od: " << r.srcvp_od << "\n";
    if (!out_path.empty()) {
        std::ofstream out = open_output(out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latred: sequential lattice reduction toolkit"};
    app.set_version_flag("--version", latred::kVersion);
    app.require_subcommand(1);

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "reduce a basis file");
    reduce->add_option("--in", ra.in, "input basis file")->required();
    reduce->add_option("--algo", ra.algo, "lll|seysen|sr-pair|sr-hash|sr-cvp|greedy");
    reduce->add_option("--tau", ra.tau, "acceptance threshold in (0,1]");
    reduce->add_option("--k", ra.k, "sr-hash sketch bits");
    reduce->add_option("--t", ra.t, "sr-hash table count");
    reduce->add_option("--seed", ra.seed, "rng seed");
    reduce->add_option("--cap", ra.cap, "enumeration cap");
    reduce->add_option("--out", ra.out, "output basis file")->required();
    reduce->add_option("--transform-out", ra.transform_out, "unimodular transform file");
    reduce->add_option("--report-out", ra.report_out, "report JSON file");

    std::string dims = "2,3,4", algos = "sr-pair", variant = "primal", out_path;
    long long trials = 100;
    double tau = 1.0;
    std::uint64_t seed = 0;
    int k = -1, t = -1;
    auto* ods = app.add_subcommand("od-sweep", "mean orthogonality defect per dimension");
    ods->add_option("--dims", dims, "comma separated dimensions");
    ods->add_option("--trials", trials);
    ods->add_option("--algos", algos, "comma separated algorithms");
    ods->add_option("--variant", variant, "primal|dual");
    ods->add_option("--tau", tau);
    ods->add_option("--seed", seed);
    ods->add_option("--k", k);
    ods->add_option("--t", t);
    ods->add_option("--out", out_path)->required();

    int hist_n = 60, bins = 90;
    auto* ah = app.add_subcommand("angle-hist", "pooled pairwise-angle histogram");
    ah->add_option("--n", hist_n);
    ah->add_option("--trials", trials);
    ah->add_option("--variant", variant, "primal|dual");
    ah->add_option("--bins", bins);
    ah->add_option("--seed", seed);
    ah->add_option("--out", out_path)->required();

    auto* bc = app.add_subcommand("bounds-check", "SR-CVP theorem checks at small n");
    bc->add_option("--dims", dims);
    bc->add_option("--trials", trials);
    bc->add_option("--tau", tau);
    bc->add_option("--seed", seed);
    bc->add_option("--out", out_path)->required();

    std::string config_path;
    auto* bs = app.add_subcommand("ber-sweep", "Monte-Carlo BER vs SNR");
    bs->add_option("--config", config_path, "JSON config")->required();
    bs->add_option("--out", out_path)->required();

    auto* cs = app.add_subcommand("complexity-sweep", "vector comparisons vs SNR");
    cs->add_option("--config", config_path, "JSON config")->required();
    cs->add_option("--out", out_path)->required();

    double eps = 0.5, nu = 1e-4;
    std::string ce_out;
    auto* ce = app.add_subcommand("counterexamples", "the two stall constructions");
    ce->add_option("--epsilon", eps);
    ce->add_option("--nu", nu);
    ce->add_option("--out", ce_out, "optional JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(ra);
        if (ods->parsed()) return cmd_od_sweep(dims, trials, algos, variant, tau, seed, k, t, out_path);
        if (ah->parsed()) return cmd_angle_hist(hist_n, trials, variant, bins, seed, out_path);
        if (bc->parsed()) return cmd_bounds_check(dims, trials, tau, seed, out_path);
        if (bs->parsed()) return cmd_ber_sweep(config_path, out_path, false);
        if (cs->parsed()) return cmd_ber_sweep(config_path, out_path, true);
        if (ce->parsed()) return cmd_counterexamples(eps, nu, ce_out);
    } catch (const latred::InvalidInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const latred::DegenerateBasisError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const latred::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
