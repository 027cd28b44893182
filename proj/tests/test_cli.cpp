// End-to-end checks of the command line tool: spawn the real binary, inspect
// exit codes and artifacts.

#include "latred/experiments.hpp"
#include "latred/linalg.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = LATRED_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("latred_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("reduce: identity input comes back unchanged") {
    TempDir tmp;
    latred::write_basis_file(tmp.file("id.txt"), latred::Basis(latred::Matrix::Identity(4, 4)));
    REQUIRE(run("reduce --in " + tmp.file("id.txt") + " --algo sr-pair --out " +
                tmp.file("out.txt")) == 0);
    const latred::Basis out = latred::read_basis_file(tmp.file("out.txt"));
    CHECK(out.matrix() == latred::Matrix::Identity(4, 4));

    const json report = json::parse(slurp(tmp.file("out.txt.report.json")));
    CHECK(report["accepted_updates"] == 0);
    CHECK(report.contains("od_before"));
    CHECK(report["params"]["seed"] == 0);
}

TEST_CASE("reduce: sr-cvp hits the golden defect on the 3x3 stall basis") {
    TempDir tmp;
    latred::write_basis_file(tmp.file("a.txt"),
                             latred::counterexample_pair_3x3(std::numbers::pi / 2 - 1e-4));
    REQUIRE(run("reduce --in " + tmp.file("a.txt") + " --algo sr-cvp --out " +
                tmp.file("out.txt")) == 0);
    const json report = json::parse(slurp(tmp.file("out.txt.report.json")));
    CHECK(std::abs(report["od_after"].get<double>() - 1.1547) < 1e-3);
}

TEST_CASE("reduce: sr-hash runs are byte-identical under a fixed seed") {
    TempDir tmp;
    std::mt19937_64 rng(5);
    latred::write_basis_file(tmp.file("b.txt"), latred::dual_gaussian_basis(12, rng));
    const std::string common = "reduce --in " + tmp.file("b.txt") +
                               " --algo sr-hash --k 3 --t 4 --seed 99 --out ";
    REQUIRE(run(common + tmp.file("o1.txt")) == 0);
    REQUIRE(run(common + tmp.file("o2.txt")) == 0);
    CHECK(slurp(tmp.file("o1.txt")) == slurp(tmp.file("o2.txt")));
    CHECK(slurp(tmp.file("o1.txt.U.txt")) == slurp(tmp.file("o2.txt.U.txt")));
    CHECK(slurp(tmp.file("o1.txt.report.json")) == slurp(tmp.file("o2.txt.report.json")));
}

TEST_CASE("reduce: unparsable or degenerate input exits 2") {
    TempDir tmp;
    {
        std::ofstream f(tmp.file("broken.txt"));
        f << "2 2\n1 0\n";  // missing row
    }
    CHECK(run("reduce --in " + tmp.file("broken.txt") + " --algo lll --out " +
              tmp.file("x.txt")) == 2);
    {
        std::ofstream f(tmp.file("degenerate.txt"));
        f << "2 2\n1 2\n2 4\n";  // rank 1
    }
    CHECK(run("reduce --in " + tmp.file("degenerate.txt") + " --algo lll --out " +
              tmp.file("x.txt")) == 2);
    CHECK(run("reduce --in " + tmp.file("missing.txt") + " --algo lll --out " +
              tmp.file("x.txt")) == 2);
}

TEST_CASE("od-sweep emits one row per (dim, algorithm)") {
    TempDir tmp;
    REQUIRE(run("od-sweep --dims 2,3 --trials 5 --algos sr-pair,greedy --variant dual "
                "--seed 7 --out " + tmp.file("od.csv")) == 0);
    const std::string csv = slurp(tmp.file("od.csv"));
    CHECK(csv.find("n,algorithm,variant,mean_od_before,mean_od_after,trials,seed,status") !=
          std::string::npos);
    CHECK(csv.find("2,sr-pair,dual") != std::string::npos);
    CHECK(csv.find("3,greedy,dual") != std::string::npos);
    CHECK(csv.find("# latred") != std::string::npos);  // metadata header
}

TEST_CASE("od-sweep marks rows above the enumeration cap instead of dying") {
    TempDir tmp;
    REQUIRE(run("od-sweep --dims 30 --trials 2 --algos sr-cvp --variant primal --seed 3 "
                "--out " + tmp.file("od.csv")) == 0);
    CHECK(slurp(tmp.file("od.csv")).find("error:") != std::string::npos);
}

TEST_CASE("bounds-check: range guard exits 2, valid dims report zero violations") {
    TempDir tmp;
    CHECK(run("bounds-check --dims 5 --trials 3 --tau 1 --out " + tmp.file("b.csv")) == 2);
    REQUIRE(run("bounds-check --dims 2,3 --trials 10 --tau 1 --seed 11 --out " +
                tmp.file("b.csv")) == 0);
    const std::string csv = slurp(tmp.file("b.csv"));
    CHECK(csv.find("2,10,0,0,0") != std::string::npos);
    CHECK(csv.find("3,10,0,0,0") != std::string::npos);
}

TEST_CASE("angle-hist: identity-free sanity on dual bases") {
    TempDir tmp;
    REQUIRE(run("angle-hist --n 20 --trials 3 --variant dual --bins 30 --seed 1 --out " +
                tmp.file("h.csv")) == 0);
    const std::string csv = slurp(tmp.file("h.csv"));
    CHECK(csv.find("bin_low,bin_high,count") != std::string::npos);
    CHECK(csv.find("fraction_below_pi_3") != std::string::npos);
}

TEST_CASE("ber-sweep and complexity-sweep share a config") {
    TempDir tmp;
    {
        std::ofstream f(tmp.file("cfg.json"));
        f << R"({"n_t":2,"n_r":2,"qam_order":4,"detector":"sic","reducer":"sr-pair",
                 "trials":20,"seed":5,"snr_points":[6.0,14.0]})";
    }
    REQUIRE(run("ber-sweep --config " + tmp.file("cfg.json") + " --out " +
                tmp.file("ber.csv")) == 0);
    const std::string ber = slurp(tmp.file("ber.csv"));
    CHECK(ber.find("snr_db,detector,reducer,ber,mean_comparisons,mean_od,trials,seed") !=
          std::string::npos);
    CHECK(ber.find("6,sic,sr-pair") != std::string::npos);

    REQUIRE(run("complexity-sweep --config " + tmp.file("cfg.json") + " --out " +
                tmp.file("cx.csv")) == 0);
    CHECK(slurp(tmp.file("cx.csv")).find("snr_db,reducer,mean_comparisons,mean_od,trials,seed") !=
          std::string::npos);

    CHECK(run("ber-sweep --config " + tmp.file("nope.json") + " --out " +
              tmp.file("x.csv")) == 2);
}

TEST_CASE("counterexamples command reports the golden values") {
    TempDir tmp;
    REQUIRE(run("counterexamples --epsilon 0.5 --nu 1e-4 --out " + tmp.file("ce.json")) == 0);
    const json j = json::parse(slurp(tmp.file("ce.json")));
    CHECK(j["greedy_min_norm"].get<double>() == doctest::Approx(2.0));
    CHECK(j["srcvp_min_norm"].get<double>() == doctest::Approx(1.0));
    CHECK_FALSE(j["pair_changed"].get<bool>());
    CHECK(std::abs(j["srcvp_od"].get<double>() - 1.1547) < 1e-3);
    CHECK(j["input_od"].get<double>() > 1e3);
}
