#include "latred/sr.hpp"

#include "latred/linalg.hpp"
#include "latred/lsh.hpp"
#include "detail/sr_engine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace latred {

namespace {

void validate_tau(double tau) {
    // tau > 1 may make the loop diverge; disallowed.
    if (!(tau > 0.0 && tau <= 1.0))
        throw InvalidInputError("tau must lie in (0, 1]");
}

// Indices 0..n-1 with `skip` removed, ascending.
std::vector<Eigen::Index> other_indices(Eigen::Index n, Eigen::Index skip) {
    std::vector<Eigen::Index> idx;
    idx.reserve(n - 1);
    for (Eigen::Index j = 0; j < n; ++j)
        if (j != skip) idx.push_back(j);
    return idx;
}

// Exact-CVP proposal for column i against the sublattice of all others.
bool cvp_step(const Matrix& b, Eigen::Index i, int cap, IntVector& c_out,
              ReductionReport& rep) {
    const Eigen::Index n = b.cols();
    if (n < 2) return false;
    Matrix sub(b.rows(), n - 1);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) sub.col(col++) = b.col(j);
    const CvpResult res = enumerate_cvp(Basis(std::move(sub)), b.col(i), cap);
    ++rep.cvp_calls;
    rep.vector_comparisons += res.candidates_examined;
    c_out = IntVector::Zero(n);
    col = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) c_out(j) = res.coefficients(col++);
    return true;
}

// One scheduled CVP attempt outside the round-robin loop (heuristic phases,
// greedy); applies the update when accepted.
bool attempt_cvp_once(detail::SrState& st, Eigen::Index i, double tau, int cap,
                      ReductionReport& rep) {
    IntVector c;
    if (!cvp_step(st.b, i, cap, c, rep)) {
        ++rep.ineffective_attempts;
        return false;
    }
    const double resid_sq = detail::update_residual(st.b, i, c).squaredNorm();
    const double norm_sq = st.b.col(i).squaredNorm();
    if (!detail::accept_update(resid_sq, norm_sq, tau)) {
        ++rep.ineffective_attempts;
        return false;
    }
    st.apply(i, c);
    ++rep.accepted_updates;
    rep.max_residual_ratio = std::max(rep.max_residual_ratio, std::sqrt(resid_sq / norm_sq));
    rep.sumsq_trace.push_back(st.b.squaredNorm());
    return true;
}

Eigen::Index longest_column(const Matrix& b) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        const double nsq = b.col(j).squaredNorm();
        if (nsq > best) {  // strict: ties resolve to the lowest index
            best = nsq;
            arg = j;
        }
    }
    return arg;
}

ReductionOutcome finish(detail::SrState&& st, ReductionReport&& rep, double od_before) {
    rep.od_before = od_before;
    Basis reduced(std::move(st.b));
    rep.od_after = orthogonality_defect(reduced);
    return ReductionOutcome{std::move(reduced), UnimodularTransform(std::move(st.u)),
                            UnimodularTransform(std::move(st.v)), std::move(rep)};
}

}  // namespace

ReductionOutcome sr_reduce(const Basis& basis, const SrConfig& config) {
    validate_tau(config.tau);
    switch (config.subroutine) {
        case SrSubroutine::Hash: {
            if (!config.lsh)
                throw InvalidInputError("sr_reduce: Hash subroutine needs LshParams");
            return sr_hash_reduce(basis, config.tau, *config.lsh, config.max_updates);
        }
        case SrSubroutine::Greedy:
            return greedy_reduce(basis, config.tau, config.enumeration_cap);
        case SrSubroutine::ExactCvp:
            if (basis.rank() > config.enumeration_cap)
                throw InvalidInputError("sr_reduce: rank exceeds the enumeration cap");
            break;
        case SrSubroutine::Pair:
            break;
    }

    const double od_before = orthogonality_defect(basis);
    detail::SrState st(basis);
    ReductionReport rep;

    if (config.subroutine == SrSubroutine::ExactCvp) {
        detail::run_sr_loop(
            st, config.tau, config.max_updates, rep,
            [&](Eigen::Index i, IntVector& c) { return cvp_step(st.b, i, config.enumeration_cap, c, rep); },
            [](Eigen::Index) {});
    } else {
        detail::run_sr_loop(
            st, config.tau, config.max_updates, rep,
            [&](Eigen::Index i, IntVector& c) {
                ++rep.cvp_calls;
                return detail::pair_step(st.b, i, other_indices(st.b.cols(), i), c,
                                         rep.vector_comparisons);
            },
            [](Eigen::Index) {});
    }
    return finish(std::move(st), std::move(rep), od_before);
}

ReductionOutcome sr_cvp_heuristic(const Basis& basis, double tau, int enumeration_cap) {
    validate_tau(tau);
    if (basis.rank() > enumeration_cap)
        throw InvalidInputError("sr_cvp_heuristic: rank exceeds the enumeration cap");

    const double od_before = orthogonality_defect(basis);
    detail::SrState st(basis);
    ReductionReport rep;
    rep.sumsq_trace.push_back(st.b.squaredNorm());

    const Eigen::Index n = st.b.cols();
    if (n >= 2) {
        // Longest column first, then the rest by descending norm.
        const Eigen::Index first = longest_column(st.b);
        attempt_cvp_once(st, first, tau, enumeration_cap, rep);
        std::vector<Eigen::Index> rest = other_indices(n, first);
        std::stable_sort(rest.begin(), rest.end(), [&](Eigen::Index a, Eigen::Index b2) {
            return st.b.col(a).squaredNorm() > st.b.col(b2).squaredNorm();
        });
        for (const Eigen::Index i : rest) attempt_cvp_once(st, i, tau, enumeration_cap, rep);
        rep.wall_rounds = 1;
    }

    // Fixed-point pass: the performance bounds assume stationarity.
    detail::run_sr_loop(
        st, tau, std::nullopt, rep,
        [&](Eigen::Index i, IntVector& c) { return cvp_step(st.b, i, enumeration_cap, c, rep); },
        [](Eigen::Index) {});
    return finish(std::move(st), std::move(rep), od_before);
}

ReductionOutcome greedy_reduce(const Basis& basis, double tau, int enumeration_cap) {
    validate_tau(tau);
    if (basis.rank() > enumeration_cap)
        throw InvalidInputError("greedy_reduce: rank exceeds the enumeration cap");

    const double od_before = orthogonality_defect(basis);
    detail::SrState st(basis);
    ReductionReport rep;
    rep.sumsq_trace.push_back(st.b.squaredNorm());

    if (basis.rank() >= 2) {
        while (attempt_cvp_once(st, longest_column(st.b), tau, enumeration_cap, rep)) {
        }
    }
    rep.wall_rounds = rep.accepted_updates + 1;
    return finish(std::move(st), std::move(rep), od_before);
}

bool is_pair_stationary(const Basis& basis) {
    const Matrix& b = basis.matrix();
    for (Eigen::Index i = 0; i < b.cols(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            if (i == j) continue;
            if (detail::round_half_away(b.col(i).dot(b.col(j)) / b.col(j).squaredNorm()) != 0)
                return false;
        }
    }
    return true;
}

bool is_cvp_stationary(const Basis& basis, double tau, int enumeration_cap) {
    const Matrix& b = basis.matrix();
    const Eigen::Index n = b.cols();
    if (n < 2) return true;
    ReductionReport scratch;
    for (Eigen::Index i = 0; i < n; ++i) {
        IntVector c;
        cvp_step(b, i, enumeration_cap, c, scratch);
        const double resid_sq = detail::update_residual(b, i, c).squaredNorm();
        if (detail::accept_update(resid_sq, b.col(i).squaredNorm(), tau)) return false;
    }
    return true;
}

SrBoundsReport check_srcvp_bounds(const Basis& basis, double tau, int enumeration_cap) {
    validate_tau(tau);
    const Eigen::Index n = basis.rank();
    const double denom = 4.0 * tau - static_cast<double>(n) + 1.0;
    if (!(denom > 0.0))
        throw InvalidInputError(
            "check_srcvp_bounds: bounds require n < 4 tau + 1 (got n = " +
            std::to_string(n) + ", tau = " + std::to_string(tau) + ")");

    const std::vector<double> minima = successive_minima(basis, static_cast<int>(n),
                                                         enumeration_cap);
    SrBoundsReport out;
    out.lambda_1 = minima.front();
    out.lambda_n = minima.back();

    const QualityMetrics q = quality_metrics(basis);
    out.basis_length = q.basis_length;
    out.length_bound = std::sqrt(4.0 * n / denom) * out.lambda_n;
    out.length_ok = out.basis_length <= out.length_bound * (1.0 + 1e-9);

    out.od = q.od;
    out.od_bound = std::pow(4.0 / denom, n / 2.0) *
                   std::pow(out.lambda_n / out.lambda_1, static_cast<double>(n));
    out.od_ok = out.od <= out.od_bound * (1.0 + 1e-9);

    // cos^2 of the angle between b_i and span of the others, via the
    // orthogonal component of b_i after Gram-Schmidt against the rest.
    out.cos_sq_max = 0.0;
    for (Eigen::Index i = 0; i < n && n >= 2; ++i) {
        Matrix reordered(basis.ambient_dim(), n);
        Eigen::Index col = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) reordered.col(col++) = basis.matrix().col(j);
        reordered.col(n - 1) = basis.matrix().col(i);
        const GramSchmidtData gs = gram_schmidt(Basis(std::move(reordered)));
        const double sin_sq = gs.norms_sq(n - 1) / basis.matrix().col(i).squaredNorm();
        out.cos_sq_max = std::max(out.cos_sq_max, 1.0 - sin_sq);
    }
    out.cos_sq_bound = (static_cast<double>(n) - 1.0) / 4.0;
    out.angle_ok = out.cos_sq_max <= out.cos_sq_bound + 1e-9;
    return out;
}

}  // namespace latred
