#include "latred/lsh.hpp"

#include "latred/linalg.hpp"
#include "detail/sr_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace latred {

namespace {

void validate_params(const LshParams& params) {
    if (params.k < 0 || params.k > 63)
        throw InvalidInputError("LshParams: k must be in [0, 63]");
    if (params.t < 1) throw InvalidInputError("LshParams: t must be >= 1");
}

// Keys of sketch(v) and sketch(-v) from one pass over the dot products.
// The boundary <a,v> = 0 maps to bit 1 for both signs.
std::pair<std::uint64_t, std::uint64_t> sketch_pair(const Matrix& planes, const Vector& v) {
    std::uint64_t key = 0, neg_key = 0;
    for (Eigen::Index j = 0; j < planes.cols(); ++j) {
        const double d = planes.col(j).dot(v);
        if (d >= 0.0) key |= std::uint64_t{1} << j;
        if (-d >= 0.0) neg_key |= std::uint64_t{1} << j;
    }
    return {key, neg_key};
}

}  // namespace

std::uint64_t sketch(const Matrix& hyperplanes, const Vector& v) {
    if (hyperplanes.cols() > 63) throw InvalidInputError("sketch: more than 63 bits");
    if (hyperplanes.cols() > 0 && hyperplanes.rows() != v.size())
        throw InvalidInputError("sketch: dimension mismatch");
    return sketch_pair(hyperplanes, v).first;
}

HashTableSet::HashTableSet(Eigen::Index ambient_dim, Eigen::Index n_columns,
                           const LshParams& params)
    : bits_(params.k) {
    validate_params(params);
    planes_.reserve(params.t);
    for (int l = 0; l < params.t; ++l) {
        // One generator per table from (seed, table index): tables stay
        // independent and replayable.
        std::seed_seq seq{params.seed, static_cast<std::uint64_t>(l)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Matrix p(ambient_dim, params.k);
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            do {
                for (Eigen::Index r = 0; r < ambient_dim; ++r) p(r, j) = gauss(rng);
            } while (p.col(j).norm() == 0.0);
            p.col(j).normalize();
        }
        planes_.push_back(std::move(p));
    }
    buckets_.resize(params.t);
    stored_keys_.assign(params.t, std::vector<std::uint64_t>(n_columns, 0));
    present_.assign(n_columns, 0);
}

void HashTableSet::insert(Eigen::Index col, const Vector& value) {
    if (present_.at(col)) throw InvalidInputError("HashTableSet: column already stored");
    for (int l = 0; l < tables(); ++l) {
        const std::uint64_t key = sketch_pair(planes_[l], value).first;
        buckets_[l][key].push_back(col);
        stored_keys_[l][col] = key;
    }
    present_[col] = 1;
}

void HashTableSet::remove(Eigen::Index col) {
    if (!present_.at(col)) throw InvalidInputError("HashTableSet: column not stored");
    for (int l = 0; l < tables(); ++l) {
        // Lookup by the remembered insertion key; the vector may have changed.
        auto it = buckets_[l].find(stored_keys_[l][col]);
        Bucket& bucket = it->second;
        bucket.erase(std::find(bucket.begin(), bucket.end(), col));
        if (bucket.empty()) buckets_[l].erase(it);
    }
    present_[col] = 0;
}

std::vector<Eigen::Index> HashTableSet::candidates(Eigen::Index query_col,
                                                   const Vector& v) const {
    std::vector<Eigen::Index> out;
    for (int l = 0; l < tables(); ++l) {
        const auto [key, neg_key] = sketch_pair(planes_[l], v);
        for (const std::uint64_t k : {key, neg_key}) {
            const auto it = buckets_[l].find(k);
            if (it != buckets_[l].end())
                out.insert(out.end(), it->second.begin(), it->second.end());
            if (neg_key == key) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase(out, query_col);
    return out;
}

bool HashTableSet::consistent(Eigen::Index n_columns) const {
    for (int l = 0; l < tables(); ++l) {
        std::vector<long long> count(n_columns, 0);
        for (const auto& [key, bucket] : buckets_[l]) {
            (void)key;
            for (const Eigen::Index c : bucket) {
                if (c < 0 || c >= n_columns) return false;
                ++count[c];
            }
        }
        for (Eigen::Index c = 0; c < n_columns; ++c)
            if (count[c] != 1) return false;
    }
    return true;
}

HashTableSet build_tables(const Basis& basis, const LshParams& params) {
    HashTableSet tables(basis.ambient_dim(), basis.rank(), params);
    for (Eigen::Index i = 0; i < basis.rank(); ++i) tables.insert(i, basis.column(i));
    return tables;
}

std::vector<Eigen::Index> query_candidates(const HashTableSet& tables, Eigen::Index i,
                                           const Vector& b_i) {
    if (b_i.norm() == 0.0) throw InvalidInputError("query_candidates: zero query vector");
    return tables.candidates(i, b_i);
}

ReductionOutcome sr_hash_reduce(const Basis& basis, double tau, const LshParams& params,
                                std::optional<long long> max_updates) {
    if (!(tau > 0.0 && tau <= 1.0)) throw InvalidInputError("tau must lie in (0, 1]");
    validate_params(params);

    const double od_before = orthogonality_defect(basis);
    detail::SrState st(basis);
    HashTableSet tables = build_tables(basis, params);

    ReductionReport rep;
    rep.seed = params.seed;
    detail::run_sr_loop(
        st, tau, max_updates, rep,
        [&](Eigen::Index i, IntVector& c) {
            ++rep.cvp_calls;
            const std::vector<Eigen::Index> cand = tables.candidates(i, st.b.col(i));
            return detail::pair_step(st.b, i, cand, c, rep.vector_comparisons);
        },
        [&](Eigen::Index i) {
            tables.remove(i);
            tables.insert(i, st.b.col(i));
        });

    rep.od_before = od_before;
    Basis reduced(std::move(st.b));
    rep.od_after = orthogonality_defect(reduced);
    return ReductionOutcome{std::move(reduced), UnimodularTransform(std::move(st.u)),
                            UnimodularTransform(std::move(st.v)), std::move(rep)};
}

LshPlan lsh_parameter_helper(double p1, double p2, long long n_items) {
    // p1 = 1 is admitted as the degenerate limit (rho = 0, t = 1).
    if (!(p2 > 0.0 && p1 <= 1.0 && p2 < p1))
        throw InvalidInputError("lsh_parameter_helper: need 0 < p2 < p1 <= 1");
    if (n_items < 1) throw InvalidInputError("lsh_parameter_helper: empty list");
    LshPlan plan;
    plan.rho = std::log(1.0 / p1) / std::log(1.0 / p2);
    plan.k = static_cast<int>(std::ceil(std::log(static_cast<double>(n_items)) /
                                        std::log(1.0 / p2)));
    plan.t = static_cast<int>(std::ceil(std::pow(static_cast<double>(n_items), plan.rho)));
    return plan;
}

LshParams default_lsh_params(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidInputError("default_lsh_params: n must be positive");
    LshParams p;
    // Round to nearest, matching t = 11 and k = 6 at n = 60.
    p.t = std::max<int>(1, static_cast<int>(std::llround(std::pow(static_cast<double>(n), 0.585))));
    p.k = std::max<int>(0, static_cast<int>(std::llround(std::log2(static_cast<double>(n)))));
    p.seed = seed;
    return p;
}

}  // namespace latred
