#pragma once

// Internal round-robin engine shared by sr_reduce and sr_hash_reduce.
// Not installed; include only from src/.

#include "latred/reduction.hpp"
#include "latred/types.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

namespace latred::detail {

inline std::int64_t round_half_away(double x) { return std::llround(x); }

// Basis columns plus the transform U and its inverse V, both updated exactly
// per elementary step.
struct SrState {
    Matrix b;
    IntMatrix u;
    IntMatrix v;  // u^{-1}

    explicit SrState(const Basis& basis)
        : b(basis.matrix()),
          u(IntMatrix::Identity(b.cols(), b.cols())),
          v(IntMatrix::Identity(b.cols(), b.cols())) {}

    // b_i <- b_i - sum_k c_k b_k with c_i = 0; U <- U T, V <- T^{-1} V.
    void apply(Eigen::Index i, const IntVector& c) {
        b.col(i) -= b * c.cast<double>();
        u.col(i) -= u * c;
        for (Eigen::Index r = 0; r < v.rows(); ++r)
            if (r != i && c(r) != 0) v.row(r) += c(r) * v.row(i);
    }
};

// Residue of the candidate update, accumulated column by column in index
// order so SR-Pair and SR-Hash agree bitwise.
inline Vector update_residual(const Matrix& b, Eigen::Index i, const IntVector& c) {
    Vector resid = b.col(i);
    for (Eigen::Index k = 0; k < c.size(); ++k)
        if (c(k) != 0) resid -= static_cast<double>(c(k)) * b.col(k);
    return resid;
}

// Acceptance rule: strict tau test, with s_i = 0 and norm-preserving s_i
// (within 1e-12 relative) declared ineffective.
inline bool accept_update(double resid_sq, double norm_sq, double tau) {
    if (!(resid_sq < tau * norm_sq)) return false;
    const double rn = std::sqrt(resid_sq), bn = std::sqrt(norm_sq);
    return std::abs(rn - bn) > 1e-12 * bn;
}

// Pairwise cancellation over a candidate index range (ascending): pick the
// single scaled column minimizing the updated norm, ties to the lowest index.
// Returns false when the range is empty. Appends |range| to `comparisons`.
template <class IndexRange>
bool pair_step(const Matrix& b, Eigen::Index i, const IndexRange& candidates,
               IntVector& c_out, long long& comparisons) {
    const Vector bi = b.col(i);
    double best_sq = 0;
    Eigen::Index best_j = -1;
    std::int64_t best_c = 0;
    for (const Eigen::Index j : candidates) {
        ++comparisons;
        const auto bj = b.col(j);
        const std::int64_t cj = round_half_away(bi.dot(bj) / bj.squaredNorm());
        const double nsq = (bi - static_cast<double>(cj) * bj).squaredNorm();
        if (best_j < 0 || nsq < best_sq) {
            best_sq = nsq;
            best_j = j;
            best_c = cj;
        }
    }
    if (best_j < 0) return false;
    c_out = IntVector::Zero(b.cols());
    c_out(best_j) = best_c;
    return true;
}

// The loop of Algorithm 1: i <- (i mod n) + 1, terminate once m > n.
// `step(i, c_out)` proposes a candidate (and does its own cvp_calls /
// vector_comparisons accounting); `on_accept(i)` runs after the state update.
template <class StepFn, class AcceptHook>
void run_sr_loop(SrState& st, double tau, std::optional<long long> max_updates,
                 ReductionReport& rep, StepFn&& step, AcceptHook&& on_accept) {
    const Eigen::Index n = st.b.cols();
    if (rep.sumsq_trace.empty()) rep.sumsq_trace.push_back(st.b.squaredNorm());
    long long m = 1, iters = 0;
    while (m <= n) {
        const Eigen::Index i = iters % n;
        ++iters;
        IntVector c;
        bool accepted = false;
        if (step(i, c)) {
            const double resid_sq = update_residual(st.b, i, c).squaredNorm();
            const double norm_sq = st.b.col(i).squaredNorm();
            if (accept_update(resid_sq, norm_sq, tau)) {
                st.apply(i, c);
                accepted = true;
                ++rep.accepted_updates;
                rep.max_residual_ratio =
                    std::max(rep.max_residual_ratio, std::sqrt(resid_sq / norm_sq));
                rep.sumsq_trace.push_back(st.b.squaredNorm());
                on_accept(i);
                m = 1;
            }
        }
        if (!accepted) {
            ++rep.ineffective_attempts;
            ++m;
        }
        if (max_updates && rep.accepted_updates >= *max_updates) break;
    }
    rep.wall_rounds += (iters + n - 1) / n;
}

}  // namespace latred::detail
