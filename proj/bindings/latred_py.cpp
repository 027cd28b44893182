// Python bindings for the main operations: reductions, quality metrics, CVP
// solvers, LSH helpers, and the MIMO BER sweep.

#include "latred/baselines.hpp"
#include "latred/cvp.hpp"
#include "latred/experiments.hpp"
#include "latred/linalg.hpp"
#include "latred/lsh.hpp"
#include "latred/mimo.hpp"
#include "latred/sr.hpp"
#include "latred/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace latred;

namespace {

py::dict report_dict(const ReductionReport& r) {
    py::dict d;
    d["accepted_updates"] = r.accepted_updates;
    d["ineffective_attempts"] = r.ineffective_attempts;
    d["cvp_calls"] = r.cvp_calls;
    d["vector_comparisons"] = r.vector_comparisons;
    d["wall_rounds"] = r.wall_rounds;
    d["od_before"] = r.od_before;
    d["od_after"] = r.od_after;
    d["max_residual_ratio"] = r.max_residual_ratio;
    if (r.seed) d["seed"] = *r.seed;
    return d;
}

py::tuple outcome_tuple(const ReductionOutcome& out) {
    return py::make_tuple(Matrix(out.basis.matrix()),
                          Matrix(out.transform.matrix().cast<double>()),
                          report_dict(out.report));
}

std::optional<LshParams> lsh_from(int k, int t, std::uint64_t seed) {
    if (k < 0 && t < 1) return std::nullopt;
    LshParams p;
    p.k = std::max(k, 0);
    p.t = std::max(t, 1);
    p.seed = seed;
    return p;
}

}  // namespace

PYBIND11_MODULE(_latred, m) {
    m.doc() = "Sequential lattice reduction toolkit (SR-CVP, SR-Pair, SR-Hash) with "
              "LLL/Seysen baselines and a MIMO detection simulator";
    m.attr("__version__") = kVersion;

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<DegenerateBasisError>(m, "DegenerateBasisError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalErrorCpp", PyExc_ArithmeticError);

    m.def(
        "reduce",
        [](const Matrix& basis, const std::string& algorithm, double tau, int k, int t,
           std::uint64_t seed, int enumeration_cap) {
            std::optional<LshParams> lsh = lsh_from(k, t, seed);
            if (algorithm == "sr-hash" && !lsh) {
                lsh = default_lsh_params(basis.cols(), seed);
                lsh->seed = seed;
            }
            return outcome_tuple(
                run_reducer(Basis(basis), algorithm, tau, lsh, enumeration_cap));
        },
        py::arg("basis"), py::arg("algorithm"), py::arg("tau") = 1.0, py::arg("k") = -1,
        py::arg("t") = 0, py::arg("seed") = 0, py::arg("enumeration_cap") = kDefaultEnumerationCap,
        "Reduce a column basis with lll | seysen | sr-pair | sr-hash | sr-cvp | greedy.\n"
        "Returns (reduced_basis, unimodular_transform, report_dict).");

    m.def("orthogonality_defect",
          [](const Matrix& b) { return orthogonality_defect(Basis(b)); }, py::arg("basis"));
    m.def("dual_basis", [](const Matrix& b) { return Matrix(dual_basis(Basis(b)).matrix()); },
          py::arg("basis"));
    m.def("pairwise_angles",
          [](const Matrix& b) { return Matrix(pairwise_angles(Basis(b))); }, py::arg("basis"));
    m.def("gram_schmidt", [](const Matrix& b) {
        const GramSchmidtData gs = gram_schmidt(Basis(b));
        return py::make_tuple(gs.orthogonal_vectors, gs.mu, gs.norms_sq);
    }, py::arg("basis"), "Returns (orthogonal_vectors, mu, norms_sq).");

    m.def(
        "closest_vector",
        [](const Matrix& b, const Vector& target, int cap) {
            const CvpResult r = enumerate_cvp(Basis(b), target, cap);
            return py::make_tuple(r.lattice_vector, r.coefficients, r.residual_norm_sq);
        },
        py::arg("basis"), py::arg("target"), py::arg("enumeration_cap") = kDefaultEnumerationCap,
        "Exact CVP; returns (lattice_vector, coefficients, residual_norm_sq).");

    m.def(
        "babai_nearest_plane",
        [](const Matrix& b, const Vector& target) {
            const Basis basis(b);
            const CvpResult r = babai_nearest_plane(gram_schmidt(basis), basis, target);
            return py::make_tuple(r.lattice_vector, r.coefficients, r.residual_norm_sq);
        },
        py::arg("basis"), py::arg("target"));

    m.def(
        "shortest_vector",
        [](const Matrix& b, int cap) {
            const CvpResult r = shortest_vector(Basis(b), cap);
            return py::make_tuple(r.lattice_vector, r.coefficients, r.residual_norm_sq);
        },
        py::arg("basis"), py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def(
        "successive_minima",
        [](const Matrix& b, int up_to, int cap) { return successive_minima(Basis(b), up_to, cap); },
        py::arg("basis"), py::arg("up_to"), py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def("pe_bound", &pe_bound, py::arg("dual_norms"), py::arg("sigma"));

    m.def(
        "lsh_parameter_helper",
        [](double p1, double p2, long long n_items) {
            const LshPlan plan = lsh_parameter_helper(p1, p2, n_items);
            return py::make_tuple(plan.rho, plan.k, plan.t);
        },
        py::arg("p1"), py::arg("p2"), py::arg("n_items"), "Returns (rho, k, t).");

    m.def("default_lsh_params", [](Eigen::Index n) {
        const LshParams p = default_lsh_params(n, 0);
        return py::make_tuple(p.k, p.t);
    }, py::arg("n"), "Returns the experiment defaults (k, t) for rank n.");

    m.def(
        "ber_sweep",
        [](const std::string& config_json, const std::vector<double>& snr_points) {
            const MimoConfig cfg = mimo_config_from_json(nlohmann::json::parse(config_json));
            const auto rows = run_ber_sweep(cfg, snr_points);
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["snr_db"] = r.snr_db;
                d["detector"] = r.detector;
                d["reducer"] = r.reducer;
                d["ber"] = r.ber;
                d["mean_comparisons"] = r.mean_comparisons;
                d["mean_od"] = r.mean_od;
                d["trials"] = r.trials;
                d["seed"] = r.seed;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json"), py::arg("snr_points"),
        "Run the Monte-Carlo BER sweep from a JSON config string.");
}
